"""The EKL bilinear form of a map with an isolated zero at the origin."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalInvariantViolation, SingularInputError
from .field import Field
from .gw import QuadraticForm
from .localalg import DEFAULT_K_CAP, LocalAlgebra, SocleElement, local_algebra, socle_element
from .poly import Poly, PolyMap, gradient, mono_mul


@dataclass(frozen=True)
class Functional:
    """A linear functional on Q_0(f), stored as its values on the basis."""

    algebra: LocalAlgebra
    values: tuple

    def __call__(self, vec) -> object:
        K = self.algebra.field
        acc = K.zero
        for v, c in zip(self.values, vec):
            if v and c:
                acc = K.add(acc, K.mul(v, c))
        return acc


def build_functional(A: LocalAlgebra, E: SocleElement, support_index: int | None = None) -> Functional:
    """Functional with phi(E) = 1 concentrated on one basis monomial.

    By default the grevlex-largest monomial in the support of E is used; a
    different support position may be requested with ``support_index``.
    """
    K = A.field
    support = E.support()
    if not support:
        raise InternalInvariantViolation("socle element is zero")
    k = support[-1] if support_index is None else support_index
    if k not in support:
        raise ValueError(f"basis position {k} is not in the support of E")
    values = [K.zero] * A.dimension
    values[k] = K.invert(E.vector[k])
    return Functional(A, tuple(values))


@dataclass(frozen=True)
class GramMatrix:
    field: Field
    entries: tuple
    labels: tuple = ()

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def rows(self) -> list[list]:
        return [list(r) for r in self.entries]

    def is_symmetric(self) -> bool:
        n = self.size
        return all(self.entries[i][j] == self.entries[j][i] for i in range(n) for j in range(i))

    def rank(self) -> int:
        return matrix_rank(self.field, self.rows())


def matrix_rank(K: Field, rows: list[list]) -> int:
    rows = [list(r) for r in rows]
    n = len(rows)
    m = len(rows[0]) if rows else 0
    rank = 0
    for col in range(m):
        piv = next((r for r in range(rank, n) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = K.invert(rows[rank][col])
        for r in range(rank + 1, n):
            if rows[r][col]:
                c = K.mul(rows[r][col], inv)
                rows[r] = [K.sub(a, K.mul(c, b)) for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def gram_matrix(A: LocalAlgebra, phi: Functional, check: bool = True) -> GramMatrix:
    """Matrix of ``(u, v) -> phi(u * v)`` on the monomial basis."""
    K = A.field
    support = [(k, v) for k, v in enumerate(phi.values) if v]
    n = A.dimension
    G = [[K.zero] * n for _ in range(n)]
    for i, bi in enumerate(A.basis):
        for j in range(i, n):
            coords = A.monomial_vector(mono_mul(bi, A.basis[j]))
            acc = K.zero
            for k, v in support:
                c = coords.get(k)
                if c:
                    acc = K.add(acc, K.mul(v, c))
            G[i][j] = G[j][i] = acc
    gm = GramMatrix(K, tuple(tuple(r) for r in G), A.basis)
    if check and gm.rank() != n:
        raise InternalInvariantViolation("Gram matrix of the EKL form is singular")
    return gm


def diagonalize(G, pivot: str = "first", field: Field | None = None) -> tuple[QuadraticForm, list[list]]:
    """Congruence diagonalization: returns ``(D, U)`` with ``U^T G U = D``.

    ``pivot`` chooses the first or last available nonzero diagonal entry.
    When every remaining diagonal entry vanishes, a pair (i, j) with
    ``G_ij != 0`` is replaced by ``e_i + e_j, e_i - e_j``.
    """
    if isinstance(G, GramMatrix):
        K, M = G.field, G.rows()
    else:
        if field is None:
            raise ValueError("field is required for a raw matrix")
        K, M = field, [[field(x) for x in row] for row in G]
    n = len(M)
    U = [[K.one if i == j else K.zero for j in range(n)] for i in range(n)]

    def swap(a, b):
        if a == b:
            return
        M[a], M[b] = M[b], M[a]
        for row in M:
            row[a], row[b] = row[b], row[a]
        for row in U:
            row[a], row[b] = row[b], row[a]

    def combine(a, b, c):
        # e_b <- e_b + c * e_a
        for row in M:
            row[b] = K.add(row[b], K.mul(c, row[a]))
        M[b] = [K.add(x, K.mul(c, y)) for x, y in zip(M[b], M[a])]
        for row in U:
            row[b] = K.add(row[b], K.mul(c, row[a]))

    def hyperbolic_move(a, b):
        # (e_a, e_b) <- (e_a + e_b, e_a - e_b)
        combine(b, a, K.one)
        scale(b, K(-2))
        combine(a, b, K.one)

    def scale(a, c):
        for row in M:
            row[a] = K.mul(row[a], c)
        M[a] = [K.mul(x, c) for x in M[a]]
        for row in U:
            row[a] = K.mul(row[a], c)

    for k in range(n):
        cands = [i for i in range(k, n) if M[i][i]]
        if cands:
            swap(k, cands[0] if pivot == "first" else cands[-1])
        else:
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if M[i][j]), None)
            if pair is None:
                raise SingularInputError("matrix is singular")
            i, j = pair
            swap(k, i)
            hyperbolic_move(k, j)
        piv = M[k][k]
        inv = K.invert(piv)
        for j in range(k + 1, n):
            if M[k][j]:
                combine(k, j, K.neg(K.mul(M[k][j], inv)))
    return QuadraticForm(K, tuple(M[i][i] for i in range(n))), U


def congruence_holds(G: GramMatrix, D: QuadraticForm, U) -> bool:
    """Exact check of ``U^T G U == diag(D)``."""
    K = G.field
    n = G.size
    GU = [[_dot(K, G.entries[i], [U[r][j] for r in range(n)]) for j in range(n)] for i in range(n)]
    for i in range(n):
        col = [U[r][i] for r in range(n)]
        for j in range(n):
            v = _dot(K, col, [GU[r][j] for r in range(n)])
            want = D.diagonal[i] if i == j else K.zero
            if v != want:
                return False
    return True


def _dot(K, a, b):
    acc = K.zero
    for x, y in zip(a, b):
        if x and y:
            acc = K.add(acc, K.mul(x, y))
    return acc


_observers: list = []


def add_observer(callback):
    """Register ``callback(f, result)`` to run after every :func:`ekl_class`."""
    _observers.append(callback)
    return callback


def remove_observer(callback):
    if callback in _observers:
        _observers.remove(callback)


@dataclass
class EKLResult:
    algebra: LocalAlgebra
    socle: SocleElement
    functional: Functional
    gram: GramMatrix
    form: QuadraticForm
    transform: list

    @property
    def rank(self) -> int:
        return self.algebra.dimension


def ekl_class(f: PolyMap, k_cap: int = DEFAULT_K_CAP, pivot: str = "first") -> EKLResult:
    """Run the whole pipeline and return the EKL form with its ingredients."""
    A = local_algebra(f, k_cap)
    E = socle_element(A)
    phi = build_functional(A, E)
    G = gram_matrix(A, phi, check=False)
    try:
        D, U = diagonalize(G, pivot)
    except SingularInputError as exc:
        raise InternalInvariantViolation("Gram matrix of the EKL form is singular") from exc
    result = EKLResult(A, E, phi, G, D, U)
    for callback in _observers:
        callback(f, result)
    return result


def milnor_form(F: Poly, k_cap: int = DEFAULT_K_CAP) -> QuadraticForm:
    """EKL class of the gradient of a hypersurface equation."""
    return ekl_class(gradient(F), k_cap).form
