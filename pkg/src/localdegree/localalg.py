"""The local algebra Q_0(f) of a map at the origin.

Q_0(f) is computed globally as ``k[x]/((f) + m^K)`` for the first K at
which the dimension stops growing.  At that point ``m^K`` already lies in
the local ideal, so the m-primary quotient is the local ring itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import ConstantTermNonzeroError, InternalInvariantViolation, NotIsolatedError
from .groebner import GroebnerBasis, Staircase, buchberger, standard_monomials
from .poly import Monomial, Poly, PolyMap, monomials_of_degree

DEFAULT_K_CAP = 64

# Figure-1 style staircase types for a dimension-5 quotient in two variables,
# keyed by the minimal leading monomials (x-exponent, y-exponent).
RANK5_STAIRCASES = {
    frozenset({(0, 5), (1, 0)}): 1,
    frozenset({(0, 4), (1, 1), (2, 0)}): 2,
    frozenset({(0, 3), (1, 2), (2, 0)}): 3,
    frozenset({(0, 3), (1, 1), (3, 0)}): 4,
    frozenset({(0, 2), (2, 1), (3, 0)}): 5,
    frozenset({(0, 2), (1, 1), (4, 0)}): 6,
    frozenset({(0, 1), (5, 0)}): 7,
}


def _power_of_maximal_ideal(ring, K: int) -> list[Poly]:
    return [ring.monomial(m) for m in monomials_of_degree(ring.nvars, K)]


def truncated_quotient(f: PolyMap, K: int) -> tuple[GroebnerBasis, Staircase]:
    """Gröbner basis and staircase of ``(f) + m^K``."""
    gens = [g.truncate(K - 1) for g in f] + _power_of_maximal_ideal(f.ring, K)
    gb = buchberger(gens, f.ring)
    return gb, standard_monomials(gb)


@dataclass(eq=False)
class LocalAlgebra:
    map: PolyMap
    basis: tuple
    groebner: GroebnerBasis
    k_used: int
    d_sequence: tuple
    index: dict = dc_field(init=False, repr=False)

    def __post_init__(self):
        self.index = {m: i for i, m in enumerate(self.basis)}
        self._nf_cache = {}

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def ring(self):
        return self.map.ring

    @property
    def field(self):
        return self.map.field

    def reduce(self, p: Poly) -> list:
        """Coordinates of the image of ``p`` with respect to ``basis``."""
        K = self.field
        vec = [K.zero] * self.dimension
        nf = self.groebner.reduce(p.truncate(self.k_used - 1))
        for m, c in nf.terms.items():
            vec[self.index[m]] = c
        return vec

    def monomial_vector(self, m: Monomial) -> dict:
        """Sparse coordinates (position -> coefficient) of a monomial."""
        hit = self._nf_cache.get(m)
        if hit is None:
            if sum(m) >= self.k_used:
                hit = {}
            else:
                nf = self.groebner.reduce(self.ring.monomial(m))
                hit = {self.index[mm]: c for mm, c in nf.terms.items()}
            self._nf_cache[m] = hit
        return hit

    def element(self, vec) -> Poly:
        return self.ring.from_dict({self.basis[i]: c for i, c in enumerate(vec) if c})

    def multiply(self, u, v) -> list:
        return self.reduce(self.element(u) * self.element(v))

    def unit_vector(self, i: int) -> list:
        K = self.field
        return [K.one if j == i else K.zero for j in range(self.dimension)]


def local_algebra(f: PolyMap, k_cap: int = DEFAULT_K_CAP) -> LocalAlgebra:
    """Build Q_0(f), raising :class:`NotIsolatedError` past ``k_cap``."""
    if k_cap < 2:
        raise ValueError("k_cap must be at least 2")
    for i, g in enumerate(f):
        if g.constant_term():
            raise ConstantTermNonzeroError(f"component {i + 1} has constant term {g.constant_term()}")
    dims = []
    previous = None
    for K in range(1, k_cap + 1):
        gb, stairs = truncated_quotient(f, K)
        d = len(stairs)
        dims.append(d)
        if previous is not None and d == previous[2]:
            gb0, stairs0, _ = previous
            return LocalAlgebra(f, stairs0.standard_monomials, gb0, K - 1, tuple(dims))
        previous = (gb, stairs, d)
    shown = dims if len(dims) <= 8 else dims[:4] + ["..."] + dims[-2:]
    raise NotIsolatedError(
        f"dimension did not stabilize for K <= {k_cap} (d-sequence {', '.join(map(str, shown))}); "
        "the zero at the origin is not isolated or the cap is too small"
    )


def coefficient_matrix(f: PolyMap, split: str = "lowest") -> list[list[Poly]]:
    """Polynomials a_ij with ``f_i = sum_j a_ij x_j``.

    Each monomial is assigned to its lowest-index (or highest-index)
    dividing variable.
    """
    ring = f.ring
    n = ring.nvars
    rows = []
    for g in f:
        acc = [dict() for _ in range(n)]
        for m, c in g.terms.items():
            nz = [i for i, e in enumerate(m) if e]
            if not nz:
                raise ConstantTermNonzeroError("component has a constant term")
            j = nz[0] if split == "lowest" else nz[-1]
            mm = m[:j] + (m[j] - 1,) + m[j + 1:]
            acc[j][mm] = c
        rows.append([ring.from_dict(a) for a in acc])
    return rows


def truncated_determinant(matrix, degree_bound: int | None = None) -> Poly:
    """Determinant by expansion over column subsets, dropping high degrees."""
    n = len(matrix)
    ring = matrix[0][0].ring

    def cut(p):
        return p if degree_bound is None else p.truncate(degree_bound)

    # minors[S] = det of rows 0..|S|-1 restricted to the columns in bitmask S
    minors = {0: ring.one}
    for r in range(n):
        nxt = {}
        for S, val in minors.items():
            if not val:
                continue
            for c in range(n):
                if S >> c & 1:
                    continue
                entry = matrix[r][c]
                if not entry:
                    continue
                # sign: number of chosen columns greater than c
                above = bin(S >> (c + 1)).count("1")
                term = cut(val * entry)
                if above % 2:
                    term = -term
                T = S | (1 << c)
                nxt[T] = nxt[T] + term if T in nxt else term
        minors = nxt
    return minors.get((1 << n) - 1, ring.zero)


@dataclass(frozen=True)
class SocleElement:
    algebra: LocalAlgebra
    vector: tuple

    @property
    def poly(self) -> Poly:
        return self.algebra.element(self.vector)

    def support(self) -> list[int]:
        return [i for i, c in enumerate(self.vector) if c]

    def __str__(self):
        return str(self.poly)


def socle_element(A: LocalAlgebra, split: str = "lowest") -> SocleElement:
    """The distinguished socle element E = det(a_ij) in Q_0(f)."""
    det = truncated_determinant(coefficient_matrix(A.map, split), A.k_used - 1)
    vec = tuple(A.reduce(det))
    if not any(vec):
        raise InternalInvariantViolation("distinguished socle element reduced to zero")
    return SocleElement(A, vec)


def staircase_type(A: LocalAlgebra) -> Staircase:
    """Leading-monomial staircase, labelled 1-7 for two-variable rank 5."""
    lms = A.groebner.leading_monomials
    label = None
    if A.ring.nvars == 2 and A.dimension == 5:
        label = RANK5_STAIRCASES.get(frozenset(lms))
    return Staircase(lms, A.basis, label)
