"""Buchberger's algorithm under grevlex, normal forms and staircases."""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .errors import ZeroPolynomialError
from .poly import Poly, PolyRing, divides, grevlex_key, heap_key, mono_div, mono_lcm, mono_mul


def s_polynomial(f: Poly, g: Poly) -> Poly:
    if f.is_zero() or g.is_zero():
        raise ZeroPolynomialError("S-polynomial of the zero polynomial")
    K = f.field
    lf, lg = f.leading_monomial(), g.leading_monomial()
    lcm = mono_lcm(lf, lg)
    a = f.mul_term(mono_div(lcm, lf), K.invert(f.leading_coefficient()))
    b = g.mul_term(mono_div(lcm, lg), K.invert(g.leading_coefficient()))
    return a - b


class _Reducer:
    """Division by a fixed list of monic polynomials."""

    def __init__(self, polys):
        self.entries = []
        for g in polys:
            g = g if g.leading_coefficient() == 1 else g.monic()
            lm = g.leading_monomial()
            tail = [(m, c) for m, c in g.terms.items() if m != lm]
            self.entries.append((lm, tail))

    def find(self, m):
        for lm, tail in self.entries:
            if all(a <= b for a, b in zip(lm, m)):
                return lm, tail
        return None

    def reduce(self, ring: PolyRing, terms: dict, full: bool = True) -> dict:
        """Return the remainder of ``terms``; ``terms`` is consumed."""
        K = ring.field
        p = K.characteristic
        heap = [heap_key(m) for m in terms]
        heapq.heapify(heap)
        rem = {}
        while heap:
            hk = heapq.heappop(heap)
            m = hk[1][::-1]
            c = terms.pop(m, None)
            if c is None:
                continue
            hit = self.find(m)
            if hit is None:
                rem[m] = c
                if not full:
                    rem.update(terms)
                    return rem
                continue
            lm, tail = hit
            q = tuple(a - b for a, b in zip(m, lm))
            for tm, tc in tail:
                mm = tuple(a + b for a, b in zip(tm, q))
                old = terms.get(mm)
                if p:
                    v = ((old or 0) - c * tc) % p
                else:
                    v = (old or 0) - c * tc
                if v:
                    terms[mm] = v
                    if old is None:
                        heapq.heappush(heap, heap_key(mm))
                elif old is not None:
                    del terms[mm]
        return rem


def normal_form(p: Poly, basis) -> Poly:
    """Fully reduced remainder of ``p`` on division by ``basis``."""
    gens = basis.generators if isinstance(basis, GroebnerBasis) else [g for g in basis if g]
    if not gens:
        return p
    red = basis._reducer if isinstance(basis, GroebnerBasis) else _Reducer(gens)
    return Poly(p.ring, red.reduce(p.ring, dict(p.terms)))


def divide(p: Poly, gens) -> tuple[list[Poly], Poly]:
    """Multivariate division returning cofactors ``q`` and remainder ``r``.

    ``p == sum(q_i * gens_i) + r`` holds exactly.
    """
    ring, K = p.ring, p.field
    gens = list(gens)
    quotients = [dict() for _ in gens]
    terms = dict(p.terms)
    rem = {}
    while terms:
        m = max(terms, key=grevlex_key)
        c = terms[m]
        for i, g in enumerate(gens):
            if g and divides(g.leading_monomial(), m):
                q = mono_div(m, g.leading_monomial())
                t = K.div(c, g.leading_coefficient())
                quotients[i][q] = K.add(quotients[i].get(q, K.zero), t)
                for gm, gc in g.terms.items():
                    mm = mono_mul(gm, q)
                    v = K.sub(terms.get(mm, K.zero), K.mul(t, gc))
                    if v:
                        terms[mm] = v
                    else:
                        terms.pop(mm, None)
                break
        else:
            rem[m] = terms.pop(m)
    return [ring.from_dict(q) for q in quotients], Poly(ring, rem)


@dataclass(frozen=True)
class Staircase:
    leading_monomials: tuple
    standard_monomials: tuple | None  # None when the quotient is infinite
    label: int | None = None

    @property
    def is_finite(self) -> bool:
        return self.standard_monomials is not None

    def __len__(self):
        if self.standard_monomials is None:
            raise ValueError("infinite staircase")
        return len(self.standard_monomials)


class GroebnerBasis:
    """Reduced, monic Gröbner basis sorted by ascending leading monomial."""

    def __init__(self, ring: PolyRing, generators, reduced: bool = True):
        self.ring = ring
        self.generators = tuple(sorted(generators, key=lambda g: grevlex_key(g.leading_monomial())))
        self.reduced = reduced
        self._reducer = _Reducer(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __eq__(self, other):
        return isinstance(other, GroebnerBasis) and self.generators == other.generators

    def __repr__(self):
        return "GroebnerBasis[" + ", ".join(str(g) for g in self.generators) + "]"

    @property
    def leading_monomials(self) -> tuple:
        return tuple(g.leading_monomial() for g in self.generators)

    def reduce(self, p: Poly) -> Poly:
        return normal_form(p, self)

    def contains(self, p: Poly) -> bool:
        return normal_form(p, self).is_zero()

    def is_unit_ideal(self) -> bool:
        return any(sum(g.leading_monomial()) == 0 for g in self.generators)


def buchberger(gens, ring: PolyRing | None = None) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``gens``.

    Pairs are processed smallest-lcm first.  Pairs with coprime leading
    monomials are skipped, as are pairs covered by the chain criterion.
    """
    gens = [g for g in gens if g]
    if ring is None:
        if not gens:
            raise ZeroPolynomialError("cannot infer ring of an empty generator list")
        ring = gens[0].ring
    if not gens:
        return GroebnerBasis(ring, [])
    G: list[Poly] = []
    for g in sorted((g.monic() for g in gens), key=lambda g: grevlex_key(g.leading_monomial())):
        if sum(g.leading_monomial()) == 0:
            return GroebnerBasis(ring, [ring.one])
        G.append(g)
    # drop exact duplicates before pairing
    uniq = []
    for g in G:
        if g not in uniq:
            uniq.append(g)
    G = uniq
    lms = [g.leading_monomial() for g in G]

    heap = []
    pending = set()

    def push(i, j):
        lcm = mono_lcm(lms[i], lms[j])
        heapq.heappush(heap, (grevlex_key(lcm), i, j))
        pending.add((i, j))

    for j in range(len(G)):
        for i in range(j):
            push(i, j)

    reducer = _Reducer(G)
    while heap:
        _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        a, b = lms[i], lms[j]
        lcm = mono_lcm(a, b)
        if all(x == 0 or y == 0 for x, y in zip(a, b)):
            continue
        if G[i].is_monomial() and G[j].is_monomial():
            continue
        if _chain_skips(i, j, lcm, lms, pending):
            continue
        s = s_polynomial(G[i], G[j])
        r = Poly(ring, reducer.reduce(ring, dict(s.terms)))
        if r.is_zero():
            continue
        r = r.monic()
        if sum(r.leading_monomial()) == 0:
            return GroebnerBasis(ring, [ring.one])
        G.append(r)
        lms.append(r.leading_monomial())
        reducer.entries.append((lms[-1], [(m, c) for m, c in r.terms.items() if m != lms[-1]]))
        k = len(G) - 1
        for i2 in range(k):
            push(i2, k)
    return GroebnerBasis(ring, _interreduce(G, ring))


def _chain_skips(i, j, lcm, lms, pending) -> bool:
    for k, lk in enumerate(lms):
        if k == i or k == j:
            continue
        if not divides(lk, lcm):
            continue
        if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
            continue
        return True
    return False


def _interreduce(G, ring):
    G = sorted(G, key=lambda g: grevlex_key(g.leading_monomial()))
    minimal = []
    for idx, g in enumerate(G):
        lm = g.leading_monomial()
        if any(divides(h.leading_monomial(), lm) and (h.leading_monomial() != lm or jdx < idx)
               for jdx, h in enumerate(G) if jdx != idx):
            continue
        minimal.append(g)
    out = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        lm = g.leading_monomial()
        tail = {m: c for m, c in g.terms.items() if m != lm}
        if others and tail:
            tail = _Reducer(others).reduce(ring, tail)
        tail[lm] = ring.field.one
        out.append(Poly(ring, tail))
    return out


def is_groebner(gens) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    gens = [g for g in gens if g]
    red = _Reducer(gens)
    for j in range(len(gens)):
        for i in range(j):
            s = s_polynomial(gens[i], gens[j])
            if red.reduce(s.ring, dict(s.terms)):
                return False
    return True


def standard_monomials(basis: GroebnerBasis) -> Staircase:
    """Monomials outside the leading-term ideal, ascending in grevlex."""
    ring = basis.ring
    n = ring.nvars
    lms = basis.leading_monomials
    bounds = []
    for i in range(n):
        pure = [lm[i] for lm in lms if all(e == 0 for k, e in enumerate(lm) if k != i) and lm[i] > 0]
        if not pure and not any(sum(lm) == 0 for lm in lms):
            return Staircase(lms, None)
        bounds.append(min(pure) if pure else 0)
    if any(sum(lm) == 0 for lm in lms):
        return Staircase(lms, ())
    found = []
    stack = [(0,) * n]
    seen = {stack[0]}
    while stack:
        m = stack.pop()
        if any(divides(lm, m) for lm in lms):
            continue
        found.append(m)
        for i in range(n):
            if m[i] + 1 < bounds[i]:
                m2 = m[:i] + (m[i] + 1,) + m[i + 1:]
                if m2 not in seen:
                    seen.add(m2)
                    stack.append(m2)
    found.sort(key=grevlex_key)
    return Staircase(lms, tuple(found))
