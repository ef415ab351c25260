"""Grothendieck-Witt arithmetic and classification of diagonal forms.

Over F_q a nondegenerate form is determined by rank and discriminant.
Over Q it is determined by rank, discriminant, signature and the Hasse
invariants ``c_v = prod_{i<j} (a_i, a_j)_v`` at every place v.  The real
place is keyed as :data:`REAL` (``0``); finite places by their prime.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations

from .errors import FieldMismatchError, ZeroInputError
from .field import Field, factorization, squarefree_part

REAL = 0


@dataclass(frozen=True)
class QuadraticForm:
    """Diagonal form ``<d_1, ..., d_N>`` with nonzero entries."""

    field: Field
    diagonal: tuple = ()

    def __post_init__(self):
        K = self.field
        entries = tuple(K(d) for d in self.diagonal)
        if any(not d for d in entries):
            raise ZeroInputError("diagonal entries must be nonzero")
        object.__setattr__(self, "diagonal", entries)

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    def __len__(self):
        return len(self.diagonal)

    def __add__(self, other):
        return direct_sum(self, other)

    def __mul__(self, other):
        return product(self, other)

    def scaled(self, a) -> "QuadraticForm":
        return product(QuadraticForm(self.field, (a,)), self)

    def square_classes(self) -> tuple:
        return tuple(self.field.square_class(d) for d in self.diagonal)

    def __str__(self):
        K = self.field
        return "⟨" + ", ".join(K.format(K.symmetric(d)) if K.is_rational else str(K.symmetric(d))
                               for d in self.diagonal) + "⟩"


def diagonal_form(field: Field, *entries) -> QuadraticForm:
    return QuadraticForm(field, tuple(entries))


def hyperbolic(field: Field, copies: int = 1) -> QuadraticForm:
    return QuadraticForm(field, (1, -1) * copies)


def _same_field(q1, q2):
    if q1.field != q2.field:
        raise FieldMismatchError(f"{q1.field} vs {q2.field}")


def direct_sum(q1: QuadraticForm, q2: QuadraticForm) -> QuadraticForm:
    _same_field(q1, q2)
    return QuadraticForm(q1.field, q1.diagonal + q2.diagonal)


def product(q1: QuadraticForm, q2: QuadraticForm) -> QuadraticForm:
    _same_field(q1, q2)
    K = q1.field
    return QuadraticForm(K, tuple(K.mul(a, b) for a in q1.diagonal for b in q2.diagonal))


# Hilbert symbols over Q


def _as_integer(a) -> int:
    """Integer in the same square class as the nonzero rational ``a``."""
    if isinstance(a, int):
        if a == 0:
            raise ZeroInputError("Hilbert symbol of 0")
        return a
    n, d = a.numerator, a.denominator
    if n == 0:
        raise ZeroInputError("Hilbert symbol of 0")
    return n * d


def _split(a: int, p: int) -> tuple[int, int]:
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v, a


def legendre(a: int, p: int) -> int:
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def hilbert_symbol(a, b, place: int) -> int:
    """The symbol ``(a, b)_v`` for nonzero rationals at a place of Q."""
    a, b = _as_integer(a), _as_integer(b)
    if place == REAL:
        return -1 if a < 0 and b < 0 else 1
    p = place
    alpha, u = _split(a, p)
    beta, v = _split(b, p)
    if p == 2:
        eps_u, eps_v = (u - 1) // 2 % 2, (v - 1) // 2 % 2
        om_u, om_v = (u * u - 1) // 8 % 2, (v * v - 1) // 8 % 2
        e = eps_u * eps_v + alpha * om_v + beta * om_u
        return -1 if e % 2 else 1
    s = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    if beta % 2:
        s *= legendre(u, p)
    if alpha % 2:
        s *= legendre(v, p)
    return s


def is_local_square(a, place: int) -> bool:
    """Whether the nonzero rational ``a`` is a square in Q_v."""
    a = _as_integer(a)
    if place == REAL:
        return a > 0
    v, u = _split(a, place)
    if v % 2:
        return False
    if place == 2:
        return u % 8 == 1
    return legendre(u, place) == 1


def primes_of(a: int) -> set[int]:
    return set(factorization(a)) if a not in (1, -1) else set()


# invariants


@dataclass(frozen=True)
class FormInvariants:
    field: Field
    rank: int
    disc: object
    signature: int | None = None
    hasse: dict | None = dc_field(default=None, compare=False, hash=False)

    def hasse_at(self, place: int) -> int:
        if self.hasse is None:
            return 1
        return self.hasse.get(place, 1)

    def places(self) -> set[int]:
        return set(self.hasse or ())

    def same_class(self, other: "FormInvariants") -> bool:
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")
        if (self.rank, self.disc, self.signature) != (other.rank, other.disc, other.signature):
            return False
        if self.field.is_rational:
            return all(self.hasse_at(v) == other.hasse_at(v) for v in self.places() | other.places())
        return True


def _hasse_map(entries: list[int], places) -> dict:
    out = {}
    for v in places:
        c = 1
        running = 1
        for j, a in enumerate(entries):
            if j:
                c *= hilbert_symbol(running, a, v)
            running = squarefree_part(running * a)
        out[v] = c
    return out


def invariants(q: QuadraticForm) -> FormInvariants:
    K = q.field
    if not K.is_rational:
        disc = K.square_class(_prod(K, q.diagonal)) if q.diagonal else 1
        return FormInvariants(K, q.rank, disc)
    classes = [squarefree_part(_as_integer(d)) for d in q.diagonal]
    disc = 1
    for c in classes:
        disc = squarefree_part(disc * c)
    sig = sum(1 if c > 0 else -1 for c in classes)
    places = {REAL, 2}
    for c in classes:
        places |= primes_of(c)
    return FormInvariants(K, q.rank, disc, sig, _hasse_map(classes, sorted(places)))


def _prod(K, values):
    out = K.one
    for v in values:
        out = K.mul(out, v)
    return out


def equivalent(q1: QuadraticForm, q2: QuadraticForm) -> bool:
    """Isometry test via the complete invariants of the field."""
    _same_field(q1, q2)
    return invariants(q1).same_class(invariants(q2))


# Witt decomposition


@dataclass(frozen=True)
class WittDecomposition:
    witt_index: int
    anisotropic: FormInvariants

    @property
    def rank(self) -> int:
        return 2 * self.witt_index + self.anisotropic.rank


def _locally_isotropic(rank: int, disc: int, hasse_v: int, place: int) -> bool:
    if rank <= 1:
        return False
    if rank == 2:
        return is_local_square(-disc, place)
    if rank == 3:
        return hilbert_symbol(-1, -disc, place) == hasse_v
    if rank == 4:
        if not is_local_square(disc, place):
            return True
        return hasse_v == hilbert_symbol(-1, -1, place)
    return True


def _isotropic_over_Q(inv: FormInvariants) -> bool:
    if inv.rank < 2 or abs(inv.signature) == inv.rank:
        return False
    places = inv.places() | {2} | primes_of(inv.disc)
    return all(_locally_isotropic(inv.rank, inv.disc, inv.hasse_at(v), v)
               for v in places if v != REAL)


def _strip_hyperbolic(inv: FormInvariants) -> FormInvariants:
    """Invariants of q' where q = H + q'."""
    d = -inv.disc
    places = inv.places() | {REAL, 2} | primes_of(d)
    hasse = {v: inv.hasse_at(v) * hilbert_symbol(-1, d, v) for v in places}
    return FormInvariants(inv.field, inv.rank - 2, squarefree_part(d) if d else 1,
                          inv.signature, hasse)


def witt_decompose(q: QuadraticForm) -> WittDecomposition:
    K = q.field
    inv = invariants(q)
    if not K.is_rational:
        r = q.rank
        if r % 2:
            k = (r - 1) // 2
            c = K.square_class(K.mul(K(-1) if k % 2 else K.one, K(inv.disc)))
            return WittDecomposition(k, FormInvariants(K, 1, c))
        k = r // 2
        hyper_disc = K.square_class(K(-1) if k % 2 else K.one) if r else 1
        if inv.disc == hyper_disc:
            return WittDecomposition(k, FormInvariants(K, 0, 1))
        # <1, c> with -c a non-square
        return WittDecomposition(k - 1, FormInvariants(K, 2, K.square_class(K.neg(K(hyper_disc * inv.disc)))))
    k = 0
    while _isotropic_over_Q(inv):
        inv = _strip_hyperbolic(inv)
        k += 1
    return WittDecomposition(k, inv)


# realizing invariants by an explicit diagonal form over Q


def _realizable(rank, disc, sig, hasse: dict) -> bool:
    if rank == 0:
        return disc == 1 and sig == 0 and all(v == 1 for v in hasse.values())
    if (rank - sig) % 2 or abs(sig) > rank:
        return False
    s = (rank - sig) // 2
    if (disc < 0) != (s % 2 == 1):
        return False
    if hasse.get(REAL, 1) != (-1 if (s * (s - 1) // 2) % 2 else 1):
        return False
    total = 1
    for v in hasse.values():
        total *= v
    if total != 1:
        return False
    if rank == 1:
        return all(v == 1 for v in hasse.values())
    if rank == 2:
        for v, c in hasse.items():
            if c != 1 and is_local_square(-disc, v):
                return False
    return True


@lru_cache(maxsize=1)
def _default_candidates(bound: int = 2000) -> tuple[int, ...]:
    out = []
    for m in range(1, bound):
        if squarefree_part(m) == m:
            out.extend((m, -m))
    return tuple(out)


def realize(inv: FormInvariants, preferred=()) -> QuadraticForm | None:
    """A diagonal form over Q with the given invariants, or ``None``.

    Entries are chosen greedily from ``preferred`` and then from small
    square-free integers; each choice keeps the residual invariants
    realizable, so the greedy pass never needs to backtrack.
    """
    K = inv.field
    if not K.is_rational:
        raise ValueError("realize works over Q only")
    rank, disc, sig = inv.rank, inv.disc, inv.signature
    hasse = {v: inv.hasse_at(v) for v in inv.places() | {REAL, 2}}
    if not _realizable(rank, disc, sig, hasse):
        return None
    seen = set()
    candidates = [c for c in list(preferred) + list(_default_candidates())
                  if not (c in seen or seen.add(c))]
    entries = []
    while rank > 1:
        for a in candidates:
            d2 = squarefree_part(disc * a)
            places = set(hasse) | primes_of(a) | primes_of(d2) | {REAL, 2}
            h2 = {v: hasse.get(v, 1) * hilbert_symbol(a, d2, v) for v in places}
            s2 = sig - (1 if a > 0 else -1)
            if _realizable(rank - 1, d2, s2, h2):
                entries.append(a)
                rank, disc, sig, hasse = rank - 1, d2, s2, h2
                break
        else:
            return None
    if rank == 1:
        entries.append(disc)
    return QuadraticForm(K, tuple(entries))


def _cancel_pairs(classes: list[int]) -> tuple[int, list[int]]:
    counts = Counter(classes)
    planes = 0
    for c in [c for c in counts if c > 0]:
        k = min(counts[c], counts.get(-c, 0))
        counts[c] -= k
        counts[-c] -= k
        planes += k
    rest = []
    for c in classes:
        if counts[c] > 0:
            rest.append(c)
            counts[c] -= 1
    return planes, rest


def _cancel_pairs_and_triples(classes: list[int], triple_limit: int = 12) -> tuple[int, list[int]]:
    """Split off visible hyperbolic planes from a list of square classes.

    Pairs ``<a, -a>`` go first; isotropic triples ``<a, b, c>`` become
    ``H + <-abc>`` while the remainder is small.
    """
    planes, classes = _cancel_pairs(classes)
    while 3 <= len(classes) <= triple_limit:
        for idx in combinations(range(len(classes)), 3):
            sub = QuadraticForm(QQ_FIELD, tuple(classes[k] for k in idx))
            if _isotropic_over_Q(invariants(sub)):
                a, b, c = (classes[k] for k in idx)
                rest = [x for k, x in enumerate(classes) if k not in idx]
                more, classes = _cancel_pairs(rest + [squarefree_part(-a * b * c)])
                planes += 1 + more
                break
        else:
            break
    return planes, classes


QQ_FIELD = Field(0)


def _simplify_equal_pairs(classes: list[int]) -> list[int]:
    """Rewrite ``<a, a>`` as ``<1, 1>`` or ``<-1, -1>`` when isometric."""
    out, pending = [], {}
    for c in classes:
        if c in pending:
            del pending[c]
            unit = 1 if c > 0 else -1
            same = equivalent(QuadraticForm(QQ_FIELD, (c, c)), QuadraticForm(QQ_FIELD, (unit, unit)))
            out.extend((unit, unit) if same else (c, c))
        else:
            pending[c] = True
    return out + list(pending)


def _class_sort_key(c):
    return (abs(c), c < 0)


def anisotropic_representative(q: QuadraticForm, wd: WittDecomposition | None = None):
    """Explicit diagonal entries (square-class representatives) of the kernel.

    Returns ``(entries, exact)``; ``exact`` is False when only invariants
    could be produced.
    """
    K = q.field
    wd = wd or witt_decompose(q)
    a = wd.anisotropic
    if not K.is_rational:
        if a.rank == 0:
            return (), True
        if a.rank == 1:
            return (a.disc,), True
        return (1, a.disc), True
    if a.rank == 0:
        return (), True
    classes = [squarefree_part(_as_integer(d)) for d in q.diagonal]
    planes, rest = _cancel_pairs_and_triples(classes)
    options = []
    if planes == wd.witt_index:
        options.append(tuple(sorted(_simplify_equal_pairs(rest), key=_class_sort_key)))
    pref = [1, -1] + sorted(set(classes), key=lambda c: (-classes.count(c), _class_sort_key(c)))
    form = realize(a, pref)
    if form is not None:
        entries = [squarefree_part(_as_integer(d)) for d in form.diagonal]
        options.append(tuple(sorted(_simplify_equal_pairs(entries), key=_class_sort_key)))
    if not options:
        return None, False
    # smallest entries win; ties keep the classes read off q itself
    return min(options, key=lambda e: (max(map(abs, e)), sum(map(abs, e)))), True


def _render_class(K: Field, c) -> str:
    if K.is_rational:
        return str(c)
    return str(K.symmetric(c))


def classify_string(q: QuadraticForm) -> str:
    """Render ``q`` as ``"kH + <c_1, ..., c_m>"``."""
    K = q.field
    wd = witt_decompose(q)
    entries, exact = anisotropic_representative(q, wd)
    parts = []
    if wd.witt_index:
        parts.append(f"{wd.witt_index}H")
    if wd.anisotropic.rank:
        if exact:
            parts.append("⟨" + ", ".join(_render_class(K, c) for c in entries) + "⟩")
        else:
            inv = wd.anisotropic
            parts.append(f"⟨rank {inv.rank}, disc {inv.disc}, signature {inv.signature}⟩?")
    return " + ".join(parts) if parts else "0"
