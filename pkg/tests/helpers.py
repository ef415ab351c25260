"""Shared generators for randomized tests."""

from localdegree.errors import NotIsolatedError
from localdegree.field import GF
from localdegree.localalg import local_algebra
from localdegree.poly import PolyMap, PolyRing, all_monomials


def random_isolated(rng, p, n, max_degree, min_degree=1, cap=12):
    K = GF(p)
    ring = PolyRing(K, n)
    monos = list(all_monomials(n, max_degree, min_degree))
    while True:
        f = PolyMap([ring.from_dict({m: rng.randrange(p) for m in monos}) for _ in range(n)])
        if any(c.is_zero() for c in f):
            continue
        try:
            return f, local_algebra(f, cap)
        except NotIsolatedError:
            continue
