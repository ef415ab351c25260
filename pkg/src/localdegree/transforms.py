"""Surgeries on polynomial maps that preserve or rescale the EKL class."""

from __future__ import annotations

from itertools import combinations

from .errors import (
    DimensionMismatchError,
    DimensionTooSmallError,
    FieldMismatchError,
    NoLinearPartError,
    SingularMatrixError,
)
from .field import Field, squarefree_part
from .gw import QuadraticForm, equivalent, invariants, primes_of
from .localalg import LocalAlgebra, local_algebra
from .poly import Poly, PolyMap, PolyRing


def _check_same(f: PolyMap, g: PolyMap):
    if f.field != g.field:
        raise FieldMismatchError(f"{f.field} vs {g.field}")
    if f.n != g.n:
        raise DimensionMismatchError(f"{f.n} vs {g.n} components")


def compose(f: PolyMap, g: PolyMap) -> PolyMap:
    """The map ``x -> f(g(x))``."""
    _check_same(f, g)
    return PolyMap([fi.substitute(list(g)) for fi in f])


def product_map(f: PolyMap, g: PolyMap) -> PolyMap:
    """``(x, y) -> (f(x), g(y))`` in disjoint variables."""
    if f.field != g.field:
        raise FieldMismatchError(f"{f.field} vs {g.field}")
    m, n = f.n, g.n
    ring = PolyRing(f.field, m + n)
    left = [c.embed(ring, range(m)) for c in f]
    right = [c.embed(ring, range(m, m + n)) for c in g]
    return PolyMap(left + right)


def determinant(K: Field, matrix) -> object:
    rows = [[K(x) for x in r] for r in matrix]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionMismatchError("determinant of a non-square matrix")
    det = K.one
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col]), None)
        if piv is None:
            return K.zero
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = K.neg(det)
        det = K.mul(det, rows[col][col])
        inv = K.invert(rows[col][col])
        for r in range(col + 1, n):
            if rows[r][col]:
                c = K.mul(rows[r][col], inv)
                rows[r] = [K.sub(a, K.mul(c, b)) for a, b in zip(rows[r], rows[col])]
    return det


def apply_linear(A, f: PolyMap) -> PolyMap:
    """Post-compose with the matrix ``A``: component i becomes sum_l a_il f_l."""
    K = f.field
    if len(A) != f.n or any(len(r) != f.n for r in A):
        raise DimensionMismatchError("matrix size does not match the map")
    if not determinant(K, A):
        raise SingularMatrixError("linear map is not invertible")
    out = []
    for row in A:
        acc = f.ring.zero
        for a, fl in zip(row, f):
            a = K(a)
            if a:
                acc = acc + fl.scale(a)
        out.append(acc)
    return PolyMap(out)


def row_operation(f: PolyMap, i: int, j: int, h: Poly) -> PolyMap:
    """Replace ``f_j`` by ``f_j + h * f_i``."""
    n = f.n
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"component index out of range for a map of size {n}")
    if i == j:
        raise ValueError("row operation needs two distinct components")
    comps = list(f)
    comps[j] = comps[j] + h * comps[i]
    return PolyMap(comps)


def truncate_map(f: PolyMap, A: LocalAlgebra | int) -> PolyMap:
    """Drop all terms of degree above N = dim Q_0(f)."""
    N = A if isinstance(A, int) else A.dimension
    return PolyMap([c.truncate(N) for c in f])


def pad_identity(f: PolyMap, extra: int) -> PolyMap:
    """Append the coordinate functions of ``extra`` fresh variables."""
    if extra < 0:
        raise ValueError("extra must be nonnegative")
    if extra == 0:
        return f
    n = f.n
    ring = PolyRing(f.field, n + extra)
    comps = [c.embed(ring, range(n)) for c in f] + [ring.gen(n + k) for k in range(extra)]
    return PolyMap(comps)


def linear_part(p: Poly) -> list:
    K = p.field
    n = p.ring.nvars
    out = [K.zero] * n
    for m, c in p.terms.items():
        if sum(m) == 1:
            out[m.index(1)] = c
    return out


def _normalize_first_component(f: PolyMap) -> PolyMap:
    """Move a component with a linear term to the front and change
    coordinates so that its linear part is exactly ``x_1``."""
    K, ring, n = f.field, f.ring, f.n
    lead = next((i for i, c in enumerate(f) if any(linear_part(c))), None)
    if lead is None:
        raise NoLinearPartError("every component lies in the square of the maximal ideal")
    comps = list(f)
    comps[0], comps[lead] = comps[lead], comps[0]
    lin = linear_part(comps[0])
    j = next(k for k, c in enumerate(lin) if c)
    gens = list(ring.gens())
    # swap x_1 and x_j, then solve the linear part for x_1
    images = list(gens)
    images[0], images[j] = gens[j], gens[0]
    comps = [c.substitute(images) for c in comps]
    lin = linear_part(comps[0])
    inv = K.invert(lin[0])
    x1 = gens[0]
    for k in range(1, n):
        if lin[k]:
            x1 = x1 - gens[k].scale(lin[k])
    images = [x1.scale(inv)] + gens[1:]
    return PolyMap([c.substitute(images) for c in comps])


def eliminating_polynomial(f1: Poly, N: int) -> Poly:
    """``h`` in the other variables with ``x_1 = h`` modulo ``(f1) + m^(N+1)``.

    ``f1`` must have linear part ``x_1``.  The relation ``x_1 = -(f1 - x_1)``
    is substituted into itself; each round pushes the terms that still
    involve ``x_1`` up by at least one degree.
    """
    ring = f1.ring
    rest = -(f1 - ring.gen(0))
    h = rest.truncate(N)
    others = list(ring.gens())[1:]
    for _ in range(N + 1):
        if all(m[0] == 0 for m in h.terms):
            return h
        h = rest.substitute([h] + others).truncate(N)
    if any(m[0] for m in h.terms):
        raise AssertionError("elimination did not converge")
    return h


def reduce_dimension(f: PolyMap, A: LocalAlgebra | None = None, with_details: bool = False):
    """Eliminate one variable, returning a map in ``n - 1`` variables.

    The local algebra of the result is isomorphic to that of ``f`` and the
    two EKL classes differ by a unit (see :func:`recover_unit`).
    """
    n = f.n
    if n < 2:
        raise DimensionTooSmallError("need at least two variables")
    if not any(any(linear_part(c)) for c in f):
        raise NoLinearPartError("every component lies in the square of the maximal ideal")
    A = A or local_algebra(f)
    N = A.dimension
    f = truncate_map(f, N)
    f = truncate_map(_normalize_first_component(f), N)
    f1 = f[0]
    tail = f1 - f.ring.gen(0)
    reduced = []
    for fj in list(f)[1:]:
        while True:
            hits = [m for m in fj.terms if m[0]]
            if not hits:
                break
            m = min(hits, key=lambda mm: (sum(mm), mm[::-1]))
            c = fj.terms[m]
            q = (m[0] - 1,) + m[1:]
            fj = (fj - (f1 * f.ring.monomial(q, c))).truncate(N)
        reduced.append(fj)
    h = eliminating_polynomial(f1, N)
    small = PolyRing(f.field, n - 1, f.ring.names[1:])
    g = PolyMap([_drop_first(c, small) for c in reduced])
    if with_details:
        return g, f, _drop_first(h, small), tail
    return g


def _drop_first(p: Poly, ring: PolyRing) -> Poly:
    return ring.from_dict({m[1:]: c for m, c in p.terms.items()})


def recover_unit(big: QuadraticForm, small: QuadraticForm) -> list:
    """All unit classes ``u`` with ``big == <u> * small`` (up to candidates).

    Over F_p both square classes are tried.  Over Q the discriminant fixes
    ``u`` when the rank is odd; for even rank a finite candidate set built
    from the primes of both forms is searched.
    """
    K = big.field
    if K != small.field:
        raise FieldMismatchError(f"{K} vs {small.field}")
    if big.rank != small.rank:
        return []
    if not K.is_rational:
        cands = [1, K.nonresidue]
    elif big.rank % 2:
        d1, d2 = invariants(big).disc, invariants(small).disc
        cands = [squarefree_part(d1 * d2)]
    else:
        primes = {2}
        for d in big.diagonal + small.diagonal:
            primes |= primes_of(squarefree_part(d.numerator * d.denominator))
        primes = sorted(primes)
        cands = []
        for r in range(len(primes) + 1):
            for sub in combinations(primes, r):
                v = 1
                for p in sub:
                    v *= p
                cands.extend((v, -v))
    return [u for u in cands if equivalent(big, small.scaled(u))]
