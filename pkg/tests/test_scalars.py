from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from heckealg.scalars import (
    ABS_PRECISION_BITS,
    CQ,
    CQ_ONE,
    CQ_ZERO,
    NormValue,
    sqrt_enclosure,
)


def test_cq_arithmetic():
    a = CQ(Fraction(1, 2), Fraction(-3))
    b = CQ(Fraction(2), Fraction(1, 3))
    assert a + b == CQ(Fraction(5, 2), Fraction(-8, 3))
    assert a - b == CQ(Fraction(-3, 2), Fraction(-10, 3))
    assert -a == CQ(Fraction(-1, 2), Fraction(3))
    # (1/2 - 3i)(2 + i/3) = 1 + 1/6 i - 6i + 1 = 2 - 35/6 i
    assert a * b == CQ(Fraction(2), Fraction(-35, 6))
    assert a.conj() == CQ(Fraction(1, 2), Fraction(3))
    assert a.abs2() == Fraction(1, 4) + 9
    assert CQ_ZERO.is_zero() and not CQ_ONE.is_zero()
    assert a.to_complex() == complex(0.5, -3.0)


def test_cq_mul_conj_compatible():
    a = CQ(Fraction(3, 7), Fraction(-2, 5))
    assert (a * a.conj()).re == a.abs2()
    assert (a * a.conj()).im == 0


def test_sqrt_enclosure_exact_square():
    lo, hi, exact = sqrt_enclosure(Fraction(9, 4))
    assert exact and lo == hi == Fraction(3, 2)
    lo, hi, exact = sqrt_enclosure(Fraction(0))
    assert exact and lo == 0


def test_sqrt_enclosure_irrational():
    q = Fraction(2)
    lo, hi, exact = sqrt_enclosure(q)
    assert not exact
    assert lo * lo <= q <= hi * hi
    assert hi - lo <= Fraction(1, 2 ** ABS_PRECISION_BITS)


def test_normvalue_add_and_scale():
    a = NormValue.abs_of(CQ(Fraction(3), Fraction(4)))  # |3+4i| = 5 exactly
    assert a.exact and a.lo == 5
    b = NormValue.abs_of(CQ(Fraction(1), Fraction(1)))  # sqrt(2)
    assert not b.exact
    s = a + b
    assert s.lo <= 5 + b.hi and s.hi >= 5 + b.lo
    t = b.scale(Fraction(3))
    assert t.lo == 3 * b.lo and t.hi == 3 * b.hi


def test_normvalue_of_rejects_negative():
    assert NormValue.of(Fraction(7, 3)).value == Fraction(7, 3)


_fracs = st.fractions(max_denominator=40, min_value=-20, max_value=20)


@given(_fracs, _fracs, _fracs, _fracs)
def test_cq_multiplication_properties(a, b, c, d):
    x, y = CQ(a, b), CQ(c, d)
    assert x * y == y * x
    assert (x * y).conj() == x.conj() * y.conj()
    assert (x * y).abs2() == x.abs2() * y.abs2()


@given(st.fractions(max_denominator=60, min_value=0, max_value=100))
def test_sqrt_enclosure_always_brackets(q):
    lo, hi, exact = sqrt_enclosure(q)
    assert lo * lo <= q <= hi * hi
    if exact:
        assert lo == hi
