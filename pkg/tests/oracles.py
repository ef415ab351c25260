"""Independent brute-force oracles used to cross-check the library."""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product as cartesian

import sympy


def padic_solvable(a: int, b: int, p: int, depth: int = 6) -> bool:
    """Whether ``z^2 = a x^2 + b y^2`` has a primitive solution modulo ``p**depth``.

    Solutions are lifted one power of ``p`` at a time by depth-first search,
    starting from every primitive solution modulo ``p``.  For square-free
    ``a`` and ``b`` a primitive solution modulo ``p^3`` (odd ``p``) or
    ``2^5`` already lifts to a p-adic one, so ``depth=6`` decides the symbol.
    """

    def residual(x, y, z, mod):
        return (a * x * x + b * y * y - z * z) % mod

    def lift(sol, k):
        if k == depth:
            return True
        mod, step = p ** (k + 1), p**k
        x, y, z = sol
        for dx, dy, dz in cartesian(range(p), repeat=3):
            cand = (x + dx * step, y + dy * step, z + dz * step)
            if residual(*cand, mod) == 0 and lift(cand, k + 1):
                return True
        return False

    for sol in cartesian(range(p), repeat=3):
        if any(c % p for c in sol) and residual(*sol, p) == 0 and lift(sol, 1):
            return True
    return False


def real_solvable(a: int, b: int) -> bool:
    return a > 0 or b > 0


def has_isotropic_vector(p: int, diagonal) -> bool:
    """Exhaustive search for a nonzero ``v`` with ``sum d_i v_i^2 = 0`` mod ``p``."""
    n = len(diagonal)
    for v in cartesian(range(p), repeat=n):
        if any(v) and sum(d * x * x for d, x in zip(diagonal, v)) % p == 0:
            return True
    return False


def max_isotropic_dimension(p: int, diagonal) -> int:
    """Largest dimension of a totally isotropic subspace, by enumeration.

    Only ranks up to 3 are needed, where the answer is 0 or 1 (a totally
    isotropic subspace of a nondegenerate form has at most half the rank).
    """
    return 1 if len(diagonal) >= 2 and has_isotropic_vector(p, diagonal) else 0


def sympy_groebner(polys, nvars: int, modulus: int = 0):
    """Reduced grevlex basis from sympy, as a set of term dictionaries."""
    gens = sympy.symbols(f"x0:{nvars}")
    exprs = [_to_expr(f, gens) for f in polys]
    opts = {"order": "grevlex"}
    if modulus:
        opts["modulus"] = modulus
    G = sympy.groebner(exprs, *gens, **opts)
    out = set()
    for g in G.exprs:
        P = sympy.Poly(g, *gens, modulus=modulus) if modulus else sympy.Poly(g, *gens)
        lc = P.LC(order="grevlex")
        terms = {}
        for m, c in P.terms():
            if modulus:
                v = int(c) * pow(int(lc), -1, modulus) % modulus
            else:
                v = sympy.Rational(c) / sympy.Rational(lc)
            terms[tuple(m)] = v
        out.add(frozenset(terms.items()))
    return out


def _to_expr(f, gens):
    expr = 0
    for m, c in f.terms.items():
        term = sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else c
        for g, e in zip(gens, m):
            term *= g**e
        expr += term
    return expr


def quotient_dimension(polys, nvars: int, K: int, modulus: int = 0) -> int:
    """dim k[x]/((polys) + m^K) counted from sympy's leading monomials."""
    gens = sympy.symbols(f"x0:{nvars}")
    extra = [sympy.Mul(*[g**e for g, e in zip(gens, m)]) for m in _degree(nvars, K)]
    exprs = [_to_expr(f, gens) for f in polys] + extra
    opts = {"order": "grevlex"}
    if modulus:
        opts["modulus"] = modulus
    G = sympy.groebner(exprs, *gens, **opts)
    lms = [sympy.Poly(g, *gens).monoms(order="grevlex")[0] for g in G.exprs]
    count = 0
    for m in _below(nvars, K):
        if not any(all(a <= b for a, b in zip(lm, m)) for lm in lms):
            count += 1
    return count


def _degree(n, d):
    return [m for m in cartesian(range(d + 1), repeat=n) if sum(m) == d]


def _below(n, d):
    return [m for m in cartesian(range(d), repeat=n) if sum(m) < d]


def ternary_isotropic(a: int, b: int, c: int) -> bool:
    """Whether ``a x^2 + b y^2 + c z^2`` has a nonzero rational zero.

    For square-free, pairwise coprime ``a, b, c`` Holzer's theorem bounds a
    primitive zero by ``|x| <= sqrt|bc|``, ``|y| <= sqrt|ac|``,
    ``|z| <= sqrt|ab|``, so an exhaustive search in that box decides it.
    """
    bx, by = math.isqrt(abs(b * c)), math.isqrt(abs(a * c))
    for x in range(bx + 1):
        for y in range(-by, by + 1):
            if x == 0 and y <= 0:
                continue
            rest = -(a * x * x + b * y * y)
            if rest % c:
                continue
            z2 = rest // c
            if z2 >= 0 and math.isqrt(z2) ** 2 == z2:
                return True
    return False
