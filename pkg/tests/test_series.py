from math import comb

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from moduli_euler.series import USeries, WPoly, us_add, us_exp, us_invert, us_log, us_mul, us_scale
from moduli_euler.symfunc import SymFunc

CAP = 8


def series(*coeffs, cap=CAP):
    return USeries([mpq(c) for c in coeffs], cap)


ONE_MINUS_W = WPoly([mpq(1), mpq(-1)])

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=5).map(mpq)
coeff_lists = st.lists(rationals, min_size=0, max_size=CAP + 1)
plain = coeff_lists.map(lambda c: USeries(c or [mpq(0)], CAP))
no_constant = coeff_lists.map(lambda c: USeries([mpq(0)] + c[:CAP], CAP))


def test_products_truncate():
    assert us_mul(series(1, 1, cap=1), series(1, -1, cap=1)) == series(1, cap=1)
    u = series(0, 1, cap=3)
    assert u * u == series(0, 0, 1, cap=3)
    a = series(1, 2, 3)
    assert us_add(a, USeries.zero(CAP)) == a
    assert us_scale(a, 2) == series(2, 4, 6)


def test_exp_and_log_examples():
    assert us_exp(USeries.zero(3)) == series(1, cap=3)
    assert us_exp(series(0, 1, cap=3)) == series(1, 1, mpq(1, 2), mpq(1, 6), cap=3)
    log_1pu = us_log(series(1, 1))
    assert us_exp(log_1pu) == series(1, 1)
    assert us_log(series(1)) == USeries.zero(CAP)
    assert us_log(series(1, -1, cap=3)) == series(0, -1, mpq(-1, 2), mpq(-1, 3), cap=3)
    assert us_log(us_exp(series(0, 0, 1))) == series(0, 0, 1)


def test_invert_examples():
    assert us_invert(series(1, -1, cap=2)) == series(1, 1, 1, cap=2)
    assert us_invert(series(1)) == series(1)
    with pytest.raises((ValueError, ZeroDivisionError)):
        us_invert(series(0, 1))


def test_shift_and_div_u():
    a = series(0, 1, 2)
    assert a.shift(1) == series(0, 0, 1, 2)
    assert a.div_u().coefficient(0) == 1


@given(no_constant)
def test_exp_log_round_trip(a):
    assert us_log(us_exp(a)) == a


@given(no_constant)
def test_log_exp_round_trip(a):
    b = us_add(series(1), a)
    assert us_exp(us_log(b)) == b


@given(plain, plain, plain)
def test_distributive(a, b, c):
    assert us_mul(a, us_add(b, c)) == us_add(us_mul(a, b), us_mul(a, c))


@given(plain)
def test_inverse(a):
    if a.coefficient(0) == 0:
        return
    assert us_mul(a, us_invert(a)) == series(1)


def test_truncation_examples():
    assert (ONE_MINUS_W ** 5).truncate(2) == 6
    assert (ONE_MINUS_W ** 3).truncate(10) == 0
    assert WPoly.constant(mpq(1)).truncate(0) == 1


def test_truncation_lemma_three_cases():
    for n in range(31):
        power = ONE_MINUS_W ** n
        for N in range(11):
            if n == 0:
                expected = 1
            elif n <= N:
                expected = 0
            else:
                expected = (-1) ** N * comb(n - 1, N)
            assert power.truncate(N) == expected, (n, N)


def test_w_cap_soundness():
    a = WPoly([mpq(k + 1) for k in range(11)])
    b = WPoly([mpq((-1) ** k) for k in range(11)])
    wide_a, wide_b = a.with_cap(20), b.with_cap(20)
    assert (a * b).truncate(10) == (wide_a * wide_b).truncate(10)


def test_series_over_symfunc():
    p1 = SymFunc.p(1, 4)
    s = USeries([SymFunc.zero(4), p1], 3)
    e = s.exp()
    assert e.coefficient(2) == p1 * p1 * mpq(1, 2)
    assert e.log() == s
