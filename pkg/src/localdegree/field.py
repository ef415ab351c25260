"""Exact coefficient fields: the rationals and prime fields of odd order.

Elements are plain Python values: ``Fraction`` over Q and ``int`` residues
in ``[0, p)`` over F_p.  A :class:`Field` instance supplies the arithmetic
and the square-class utilities; polynomials and matrices carry a reference
to it instead of wrapping every scalar.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import EvenCharacteristicError, FieldError, ZeroInputError, ZeroInversionError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@lru_cache(maxsize=4096)
def _factor(n: int) -> tuple[tuple[int, int], ...]:
    from sympy import factorint

    return tuple(sorted(factorint(n).items()))


def factorization(n: int) -> dict[int, int]:
    """Prime factorization of ``|n|`` for a nonzero integer."""
    n = abs(n)
    if n == 0:
        raise ZeroInputError("cannot factor 0")
    if n == 1:
        return {}
    return dict(_factor(n))


def squarefree_part(n: int) -> int:
    """Signed square-free integer in the square class of ``n``."""
    if n == 0:
        raise ZeroInputError("0 has no square class")
    s = 1
    for p, e in factorization(n).items():
        if e % 2:
            s *= p
    return s if n > 0 else -s


class Field:
    """Q (characteristic 0) or F_p for an odd prime p."""

    __slots__ = ("characteristic", "_nonresidue")

    def __init__(self, characteristic: int = 0):
        if characteristic == 2:
            raise EvenCharacteristicError("characteristic 2 is not supported")
        if characteristic != 0 and not is_prime(characteristic):
            raise FieldError(f"F{characteristic}: order must be an odd prime")
        self.characteristic = characteristic
        self._nonresidue = None

    @classmethod
    def rationals(cls) -> "Field":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __repr__(self):
        return "QQ" if self.is_rational else f"GF({self.characteristic})"

    def __str__(self):
        return "Q" if self.is_rational else f"F{self.characteristic}"

    # construction and arithmetic

    @property
    def zero(self):
        return Fraction(0) if self.is_rational else 0

    @property
    def one(self):
        return Fraction(1) if self.is_rational else 1

    def __call__(self, value):
        """Coerce an int, Fraction or ``"a/b"`` string into the field."""
        p = self.characteristic
        if isinstance(value, str):
            value = Fraction(value)
        if p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise ZeroInversionError(f"denominator of {value} vanishes in F{p}")
            return value.numerator * pow(value.denominator, -1, p) % p
        return int(value) % p

    def add(self, a, b):
        p = self.characteristic
        return (a + b) % p if p else a + b

    def sub(self, a, b):
        p = self.characteristic
        return (a - b) % p if p else a - b

    def mul(self, a, b):
        p = self.characteristic
        return (a * b) % p if p else a * b

    def neg(self, a):
        p = self.characteristic
        return (-a) % p if p else -a

    def invert(self, a):
        if not a:
            raise ZeroInversionError("0 has no inverse")
        p = self.characteristic
        if p:
            return pow(a, -1, p)
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.invert(b))

    def power(self, a, e: int):
        p = self.characteristic
        if e < 0:
            return self.power(self.invert(a), -e)
        return pow(a, e, p) if p else a**e

    def elements(self):
        if self.is_rational:
            raise FieldError("Q is infinite")
        return range(self.characteristic)

    def units(self):
        return range(1, self.characteristic) if not self.is_rational else None

    # square classes

    def is_square(self, a) -> bool:
        if not a:
            raise ZeroInputError("0 has no square class")
        p = self.characteristic
        if p:
            return pow(a, (p - 1) // 2, p) == 1
        return squarefree_part(a.numerator * a.denominator) == 1

    @property
    def nonresidue(self) -> int:
        """Smallest positive quadratic non-residue (F_p only)."""
        if self.is_rational:
            raise FieldError("Q has infinitely many square classes")
        if self._nonresidue is None:
            self._nonresidue = next(a for a in range(2, self.characteristic) if not self.is_square(a))
        return self._nonresidue

    def square_class(self, a):
        """Canonical representative of ``a`` modulo nonzero squares.

        Over F_p this is 1 or the smallest non-residue; over Q it is the
        signed square-free integer of the class.
        """
        if not a:
            raise ZeroInputError("0 has no square class")
        if self.characteristic:
            return 1 if self.is_square(a) else self.nonresidue
        return squarefree_part(a.numerator * a.denominator)

    def format(self, a) -> str:
        if self.characteristic:
            return str(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def symmetric(self, a) -> int:
        """Residue in ``(-p/2, p/2)`` for display; identity over Q."""
        p = self.characteristic
        if p and a > p // 2:
            return a - p
        return a


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)
