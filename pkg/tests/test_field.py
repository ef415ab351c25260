from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from localdegree.errors import EvenCharacteristicError, FieldError, ZeroInputError, ZeroInversionError
from localdegree.field import GF, QQ, Field, is_prime, squarefree_part

small_primes = st.sampled_from([3, 5, 7, 11, 13, 101])
nonzero_fractions = st.fractions(max_denominator=50).filter(lambda q: q != 0)


def test_invert_examples():
    assert QQ.invert(Fraction(2, 3)) == Fraction(3, 2)
    assert GF(7).invert(3) == 5
    assert GF(5).invert(4) == 4


def test_invert_zero_raises():
    with pytest.raises(ZeroInversionError):
        QQ.invert(QQ(0))
    with pytest.raises(ZeroInversionError):
        GF(5).invert(0)


def test_square_class_examples():
    assert QQ.square_class(Fraction(8, 18)) == 1
    assert QQ.square_class(QQ(-12)) == -3
    assert GF(7).square_class(2) == 1
    assert GF(7).square_class(3) == GF(7).nonresidue == 3


def test_is_square_examples():
    assert not GF(3).is_square(GF(3)(-1))
    assert GF(5).is_square(GF(5)(-1))
    assert QQ.is_square(QQ(4))
    assert not QQ.is_square(QQ(2))


def test_zero_has_no_square_class():
    with pytest.raises(ZeroInputError):
        QQ.square_class(QQ(0))
    with pytest.raises(ZeroInputError):
        GF(3).is_square(0)


def test_characteristic_two_rejected_at_construction():
    with pytest.raises(EvenCharacteristicError):
        Field(2)
    with pytest.raises(FieldError):
        Field(9)


def test_canonical_forms():
    assert QQ("6/4") == Fraction(3, 2)
    assert GF(7)(-1) == 6
    assert GF(7)(Fraction(1, 2)) == 4
    with pytest.raises(ZeroInversionError):
        GF(7)(Fraction(1, 7))


def test_smallest_nonresidue():
    assert [GF(p).nonresidue for p in (3, 5, 7, 11, 13, 17)] == [2, 2, 3, 2, 2, 3]


@pytest.mark.parametrize("p", [p for p in range(3, 102) if is_prime(p)])
def test_exactly_half_the_units_are_squares(p):
    K = GF(p)
    squares = {x * x % p for x in range(1, p)}
    assert sum(K.is_square(a) for a in K.units()) == (p - 1) // 2
    assert all(K.is_square(a) == (a in squares) for a in K.units())


@given(small_primes, st.integers(min_value=1))
def test_invert_is_an_involution_mod_p(p, a):
    K = GF(p)
    a = K(a)
    if a:
        assert K.invert(K.invert(a)) == a
        assert K.mul(a, K.invert(a)) == 1


@given(nonzero_fractions)
def test_invert_is_an_involution_over_q(a):
    assert QQ.invert(QQ.invert(a)) == a


@given(nonzero_fractions, nonzero_fractions)
def test_square_class_is_multiplicative_over_q(a, b):
    lhs = QQ.square_class(a * b)
    rhs = QQ.square_class(QQ(QQ.square_class(a) * QQ.square_class(b)))
    assert lhs == rhs


@given(small_primes, st.integers(min_value=1), st.integers(min_value=1))
def test_square_class_is_multiplicative_mod_p(p, a, b):
    K = GF(p)
    a, b = K(a), K(b)
    if a and b:
        assert K.square_class(K.mul(a, b)) == K.square_class(K.mul(K.square_class(a), K.square_class(b)))


@given(st.integers(min_value=1, max_value=10**6), st.integers(min_value=1, max_value=100))
def test_squarefree_part_strips_squares(n, k):
    s = squarefree_part(n)
    assert squarefree_part(n * k * k) == s
    assert squarefree_part(-n) == -s
    # square-free: no prime square divides s
    assert all(s % (d * d) for d in range(2, int(abs(s) ** 0.5) + 1))
