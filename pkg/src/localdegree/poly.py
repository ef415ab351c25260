"""Sparse multivariate polynomials over a :class:`~localdegree.field.Field`.

Monomials are exponent tuples.  The only monomial order is graded reverse
lexicographic with ``x_1 > x_2 > ... > x_n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .errors import DimensionMismatchError
from .field import Field

MAX_VARIABLES = 16

Monomial = tuple


def grevlex_key(m: Monomial):
    """Sort key: larger key means larger in grevlex."""
    return (sum(m), tuple(-e for e in reversed(m)))


def heap_key(m: Monomial):
    """Min-heap key whose minimum is the grevlex-largest monomial."""
    return (-sum(m), m[::-1])


def compare(m1: Monomial, m2: Monomial) -> int:
    """Return 1, 0 or -1 as ``m1`` is greater than, equal to or less than ``m2``."""
    if len(m1) != len(m2):
        raise DimensionMismatchError(f"monomials of length {len(m1)} and {len(m2)}")
    k1, k2 = grevlex_key(m1), grevlex_key(m2)
    return (k1 > k2) - (k1 < k2)


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomials_of_degree(n: int, d: int):
    """All exponent tuples of length ``n`` and total degree ``d``."""
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - first):
            yield (first,) + rest


def default_names(n: int) -> tuple[str, ...]:
    if n <= 4:
        return ("x", "y", "z", "w")[:n]
    return tuple(f"x{i}" for i in range(1, n + 1))


@dataclass(frozen=True)
class PolyRing:
    field: Field
    nvars: int
    names: tuple = None

    def __post_init__(self):
        if not 1 <= self.nvars <= MAX_VARIABLES:
            raise DimensionMismatchError(f"between 1 and {MAX_VARIABLES} variables supported, got {self.nvars}")
        if self.names is None:
            object.__setattr__(self, "names", default_names(self.nvars))
        elif len(self.names) != self.nvars:
            raise DimensionMismatchError("one name per variable required")
        else:
            object.__setattr__(self, "names", tuple(self.names))

    def compatible(self, other: "PolyRing") -> bool:
        return self.field == other.field and self.nvars == other.nvars

    @property
    def zero(self) -> "Poly":
        return Poly(self, {})

    @property
    def one(self) -> "Poly":
        return self.constant(1)

    def constant(self, c) -> "Poly":
        return self.monomial((0,) * self.nvars, c)

    def monomial(self, exps, c=1) -> "Poly":
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise DimensionMismatchError(f"monomial {exps} in {self.nvars} variables")
        c = self.field(c)
        return Poly(self, {exps: c} if c else {})

    def gen(self, i: int) -> "Poly":
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field.one})

    def gens(self) -> tuple["Poly", ...]:
        return tuple(self.gen(i) for i in range(self.nvars))

    def from_dict(self, terms: dict) -> "Poly":
        K = self.field
        out = {}
        for m, c in terms.items():
            m = tuple(m)
            if len(m) != self.nvars:
                raise DimensionMismatchError(f"monomial {m} in {self.nvars} variables")
            c = K(c)
            if c:
                out[m] = c
        return Poly(self, out)

    def with_names(self, names) -> "PolyRing":
        return PolyRing(self.field, self.nvars, tuple(names))

    def format_monomial(self, m: Monomial) -> str:
        parts = []
        for name, e in zip(self.names, m):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"


class Poly:
    """Immutable polynomial: a mapping from monomials to nonzero coefficients."""

    __slots__ = ("ring", "terms", "_lm")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._lm = None

    @property
    def field(self) -> Field:
        return self.ring.field

    def _check(self, other: "Poly"):
        if not self.ring.compatible(other.ring):
            raise DimensionMismatchError(f"{self.ring} vs {other.ring}")

    def _coerce(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        return self.ring.constant(other)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring.compatible(other.ring) and self.terms == other.terms
        if isinstance(other, (int, type(self.field.one))):
            return self.terms == self.ring.constant(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # arithmetic

    def __add__(self, other):
        other = self._coerce(other)
        K = self.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = K.add(out.get(m, K.zero), c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        K = self.field
        return Poly(self.ring, {m: K.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "Poly":
        K = self.field
        c = K(c) if not isinstance(c, type(K.one)) else c
        if not c:
            return self.ring.zero
        return Poly(self.ring, {m: K.mul(a, c) for m, a in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        K = self.field
        p = K.characteristic
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        if p:
            out = {m: c % p for m, c in out.items() if c % p}
        else:
            out = {m: c for m, c in out.items() if c}
        return Poly(self.ring, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = self.ring.one
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def mul_term(self, m: Monomial, c) -> "Poly":
        K = self.field
        return Poly(self.ring, {mono_mul(m, k): K.mul(v, c) for k, v in self.terms.items()})

    # order-dependent data

    def leading_monomial(self) -> Monomial:
        if self._lm is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading monomial")
            self._lm = max(self.terms, key=grevlex_key)
        return self._lm

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def monic(self) -> "Poly":
        return self.scale(self.field.invert(self.leading_coefficient()))

    def sorted_terms(self):
        """Terms in descending grevlex order."""
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    # degree data

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(m) for m in self.terms), default=-1)

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, self.field.zero)

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly(self.ring, {m: c for m, c in self.terms.items() if sum(m) == d})

    def truncate(self, N: int) -> "Poly":
        """Drop every term of total degree greater than ``N``."""
        return Poly(self.ring, {m: c for m, c in self.terms.items() if sum(m) <= N})

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def variables(self) -> set[int]:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    # calculus and substitution

    def diff(self, i: int) -> "Poly":
        K = self.field
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                v = K.mul(c, K(e))
                if v:
                    m2 = list(m)
                    m2[i] -= 1
                    out[tuple(m2)] = v
        return Poly(self.ring, out)

    def substitute(self, images) -> "Poly":
        """Replace ``x_i`` by ``images[i]`` and expand."""
        images = list(images)
        if len(images) != self.ring.nvars:
            raise DimensionMismatchError(f"{len(images)} images for {self.ring.nvars} variables")
        if not images:
            raise DimensionMismatchError("no images")
        target = images[0].ring
        for g in images:
            if not g.ring.compatible(target) or g.field != self.field:
                raise DimensionMismatchError("images must share one ring over the same field")
        powers = [dict() for _ in images]

        def power(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = target.one if e == 0 else power(i, e - 1) * images[i]
            return cache[e]

        out = target.zero
        for m, c in self.terms.items():
            term = target.constant(c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            out = out + term
        return out

    def embed(self, ring: PolyRing, positions) -> "Poly":
        """Move into ``ring`` sending variable ``i`` to ``positions[i]``."""
        out = {}
        for m, c in self.terms.items():
            e = [0] * ring.nvars
            for i, k in enumerate(positions):
                e[k] += m[i]
            out[tuple(e)] = c
        return Poly(ring, out)

    # rendering

    def __str__(self):
        if not self.terms:
            return "0"
        K = self.field
        pieces = []
        for m, c in self.sorted_terms():
            c = K.symmetric(c)
            neg = c < 0
            a = -c if neg else c
            mono = self.ring.format_monomial(m)
            coef = K.format(a) if not K.characteristic else str(a)
            if mono == "1":
                body = coef
            elif a == 1:
                body = mono
            else:
                body = f"{coef}*{mono}"
            if not pieces:
                pieces.append(f"-{body}" if neg else body)
            else:
                pieces.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(pieces)

    def __repr__(self):
        return f"Poly({self}, ring={self.ring.field!r}[{','.join(self.ring.names)}])"


def gradient(F: Poly) -> "PolyMap":
    return PolyMap([F.diff(i) for i in range(F.ring.nvars)])


class PolyMap:
    """A square polynomial map ``(f_1, ..., f_n)`` in ``n`` variables."""

    __slots__ = ("components",)

    def __init__(self, components):
        comps = tuple(components)
        if not comps:
            raise DimensionMismatchError("a map needs at least one component")
        ring = comps[0].ring
        for c in comps:
            if not c.ring.compatible(ring):
                raise DimensionMismatchError("components must share one ring")
        if len(comps) != ring.nvars:
            raise DimensionMismatchError(f"{len(comps)} components in {ring.nvars} variables")
        self.components = comps

    @property
    def ring(self) -> PolyRing:
        return self.components[0].ring

    @property
    def field(self) -> Field:
        return self.ring.field

    @property
    def n(self) -> int:
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __len__(self):
        return len(self.components)

    def __eq__(self, other):
        return isinstance(other, PolyMap) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def vanishes_at_origin(self) -> bool:
        return all(not f.constant_term() for f in self.components)

    def in_square_of_maximal_ideal(self) -> bool:
        return all(f.min_degree() >= 2 or f.is_zero() for f in self.components)

    def degree(self) -> int:
        return max(f.total_degree() for f in self.components)

    def __str__(self):
        return "(" + ", ".join(str(f) for f in self.components) + ")"

    def __repr__(self):
        return f"PolyMap{self}"


def identity_map(ring: PolyRing) -> PolyMap:
    return PolyMap(ring.gens())


def poly_from_terms(ring: PolyRing, terms) -> Poly:
    """Build from ``(coefficient, exponents)`` pairs, summing repeats."""
    return reduce(lambda a, t: a + ring.monomial(t[1], t[0]), terms, ring.zero)


def all_monomials(n: int, max_degree: int, min_degree: int = 0):
    for d in range(min_degree, max_degree + 1):
        yield from monomials_of_degree(n, d)

