from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from fracpowers.interval import ComplexBox, Interval, horner

fractions = st.fractions(min_value=-1000, max_value=1000, max_denominator=10 ** 6)
positive = st.fractions(min_value=Fraction(1, 1000), max_value=1000, max_denominator=10 ** 6)


def enclose(q):
    return Interval.from_fraction(q, 80)


def mp_fraction(x) -> Fraction:
    sign, man, exp, _ = x._mpf_
    v = Fraction(int(man)) * Fraction(2) ** int(exp)
    return -v if sign else v


def test_point_arithmetic_is_exact():
    a = Interval(3, 3, -1)  # 3/2
    b = Interval(5, 5, -2)  # 5/4
    assert (a + b).lower() == Fraction(11, 4)
    assert (a * b).lower() == Fraction(15, 8)
    assert (a - b).is_point()
    assert a.pow(4).lower() == Fraction(81, 16)


def test_from_fraction_dyadic_is_point():
    assert Interval.from_fraction(Fraction(3, 8)).is_point()
    iv = Interval.from_fraction(Fraction(1, 3), 64)
    assert not iv.is_point()
    assert iv.contains(Fraction(1, 3))
    assert iv.width() <= Fraction(1, 2 ** 63)


def test_empty_interval_rejected():
    with pytest.raises(ValueError):
        Interval(2, 1)


def test_comparisons_are_certain_only():
    a = Interval(1, 3)
    assert not a.certainly_lt(2) and not a.certainly_gt(2)
    assert a.certainly_lt(4) and a.certainly_ge(1)
    assert a.sign() == 1 and Interval(-1, 1).sign() == 0


def test_division_by_interval_containing_zero():
    with pytest.raises(ZeroDivisionError):
        Interval(1).div(Interval(-1, 1), 64)


@given(fractions, fractions)
def test_add_mul_enclose(x, y):
    a, b = enclose(x), enclose(y)
    assert (a + b).contains(x + y)
    assert (a - b).contains(x - y)
    assert (a * b).contains(x * y)
    assert a.mul(b, 40).contains(x * y)


@given(fractions, positive)
def test_div_encloses(x, y):
    assert enclose(x).div(enclose(y), 60).contains(x / y)
    assert enclose(x).div(-enclose(y), 60).contains(-x / y)


@given(positive, st.integers(min_value=0, max_value=40))
def test_pow_encloses(x, n):
    assert enclose(x).pow(n, 64).contains(x ** n)
    assert enclose(-x).pow(n, 64).contains((-x) ** n)


@given(positive)
def test_sqrt_encloses(x):
    r = enclose(x).sqrt(70)
    assert r.lower() ** 2 <= x <= r.upper() ** 2


@settings(max_examples=50)
@given(positive)
def test_ln_encloses(x):
    iv = enclose(x)
    out = iv.ln(80)
    with mpmath.workprec(400):
        lo = mp_fraction(mpmath.log(mpmath.mpf(iv.lo) * mpmath.mpf(2) ** iv.exp))
        hi = mp_fraction(mpmath.log(mpmath.mpf(iv.hi) * mpmath.mpf(2) ** iv.exp))
    assert out.lower() <= lo and hi <= out.upper()


def test_ln_of_one_and_sign():
    assert Interval(1).ln(64).is_point()
    assert Interval(1, 1, -1).ln(64).certainly_lt(0)
    assert Interval(3).ln(64).certainly_gt(1)


def test_round_widens():
    iv = Interval.from_fraction(Fraction(1, 7), 200)
    r = iv.round(20)
    assert r.contains(iv)
    assert r.width() <= Fraction(1, 2 ** 18)


def test_hull_and_intersect():
    a, b = Interval(0, 2), Interval(1, 5)
    assert a.hull(b) == Interval(0, 5)
    assert a.intersect(b) == Interval(1, 2)


def test_complex_box_and_horner():
    i = ComplexBox(Interval(0), Interval(1))
    # x^2 + 1 at i is exactly 0
    v = horner((1, 0, 1), i, 64)
    assert v.contains_zero()
    assert v.re.is_point() and v.im.is_point()
    assert i.conj().im == Interval(-1)
    assert i.abs2(64) == Interval(1)
