import math
from fractions import Fraction

import mpmath
from hypothesis import given, strategies as st

from polycount.exact import PSum, sqrt_power_le

mpmath.mp.dps = 60


def test_rational_collapse():
    h = PSum(2, {Fraction(1, 2): 1})
    assert (h * h).rational() == 2
    assert (h * h - 2).sign() == 0
    assert PSum(3, {Fraction(1, 3): 1}).rational() is None


def test_division_by_single_term():
    x = PSum(5, {2: 3, Fraction(1, 2): 1})
    y = x / PSum(5, {Fraction(1, 2): 1})
    assert (y * PSum(5, {Fraction(1, 2): 1}) - x).sign() == 0


def test_qpow_base_conversion():
    assert PSum.qpow(9, 3, Fraction(1, 2)).rational() == 3
    assert PSum.qpow(8, 2, Fraction(-1, 3)).rational() == Fraction(1, 2)


def test_sqrt_power_le_examples():
    # q^(2 sqrt 4) = q^4
    assert sqrt_power_le(2, 4, 16)
    assert not sqrt_power_le(2, 4, 15)
    # 2^(2 sqrt 2) ~ 7.10
    assert sqrt_power_le(2, 2, 8) and not sqrt_power_le(2, 2, 7)


terms = st.dictionaries(st.fractions(min_value=-3, max_value=3, max_denominator=4),
                        st.integers(-5, 5), max_size=4)


@given(st.sampled_from([2, 3, 5]), terms)
def test_sign_agrees_with_high_precision(p, t):
    s = PSum(p, t)
    v = mpmath.fsum(mpmath.mpf(int(c)) * mpmath.power(p, mpmath.mpf(y.numerator) / y.denominator)
                    for y, c in s.terms.items())
    if abs(v) > mpmath.mpf(10) ** -30:
        assert s.sign() == (1 if v > 0 else -1)
    else:
        assert s.sign() == 0


@given(st.sampled_from([2, 3, 5]), terms, terms)
def test_ring_laws(p, a, b):
    x, y = PSum(p, a), PSum(p, b)
    assert ((x + y) - y - x).sign() == 0
    assert ((x * y) - (y * x)).sign() == 0


@given(st.sampled_from([2, 3, 4, 5, 7, 8, 9]), st.integers(2, 60), st.integers(1, 10 ** 12))
def test_sqrt_power_le_matches_logs(q, d, rhs):
    lhs = 2 * mpmath.sqrt(d) * mpmath.log(q)
    rl = mpmath.log(rhs)
    if abs(lhs - rl) > mpmath.mpf(10) ** -30:
        assert sqrt_power_le(q, d, rhs) == (lhs < rl)
