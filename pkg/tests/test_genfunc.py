from math import comb

import pytest
from hypothesis import given, strategies as st

from patterncount.genfunc import (
    BINOM_FIB_GF, FIB_GF, FIB_SHIFT_GF, NAMED_GFS, RationalGF, T1_312_GF, T1_321_GF, asc,
    f312_via_maj, fib_words, fibonacci, gf_coefficients, is_fib_word, maj, maj_polynomial,
    parse_poly, poly_derivative, poly_eval, poly_mul, series_coefficient,
)


def test_fib_series():
    assert gf_coefficients(FIB_GF, 5) == [0, 1, 1, 2, 3, 5]


def test_t1_series():
    assert gf_coefficients(T1_312_GF, 8)[3:] == [1, 5, 15, 40, 95, 213]
    assert gf_coefficients(T1_321_GF, 8)[3:] == [1, 10, 50, 180, 545, 1478]


def test_t1_231_alias():
    assert NAMED_GFS["t1_231"] == NAMED_GFS["t1_312"]


def test_rejects_bad_denominator():
    with pytest.raises(ValueError):
        RationalGF((1,), (0, 1))
    with pytest.raises(ValueError):
        RationalGF((1,), (2, 1))


def test_negative_constant_denominator():
    # 1/(-1+x) = -(1 + x + x^2 + ...)
    assert gf_coefficients(RationalGF((1,), (-1, 1)), 4) == [-1] * 5


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=5),
       st.lists(st.integers(-3, 3), max_size=4), st.sampled_from([1, -1]))
def test_series_times_denominator_is_numerator(num, tail, d0):
    den = (d0, *tail)
    gf = RationalGF(tuple(num), den)
    N = 12
    series = gf_coefficients(gf, N)
    prod = poly_mul(series, den)
    expected = list(gf.numerator) + [0] * (N + 1)
    assert list(prod[: N + 1]) + [0] * (N + 1 - len(prod[: N + 1])) == expected[: N + 1]


def test_parse_poly():
    assert parse_poly("1,-1,-1") == (1, -1, -1)
    assert parse_poly("0, 0, 1, 0") == (0, 0, 1)
    with pytest.raises(ValueError):
        parse_poly("1,x")


def test_fibonacci():
    assert (fibonacci(0), fibonacci(1), fibonacci(10)) == (0, 1, 55)


def test_fib_words_small():
    assert list(fib_words(0)) == [()]
    assert set(fib_words(2)) == {(0, 0), (0, 1), (1, 0)}
    assert sum(1 for _ in fib_words(8)) == 55


@pytest.mark.parametrize("m", range(0, 15))
def test_fib_words_count(m):
    words = list(fib_words(m))
    assert len(words) == len(set(words)) == fibonacci(m + 2)
    assert all(is_fib_word(w) for w in words)


def test_maj_examples():
    assert asc((0, 1)) == [1] and maj((0, 1)) == 1
    assert maj((0,) * 7) == 0
    assert asc((0, 1, 0, 0, 1, 0, 1, 0)) == [1, 4, 6]
    assert maj((0, 1, 0, 0, 1, 0, 1, 0)) == 11


def test_maj_polynomial_bases():
    assert maj_polynomial(2) == (2, 1)
    assert maj_polynomial(3) == (2, 1, 2)
    m4 = maj_polynomial(4)
    assert m4 == maj_polynomial(4, "direct")
    assert m4 == tuple(a + b for a, b in zip((2, 1, 2, 0, 0), (0, 0, 0, 2, 1)))


@pytest.mark.parametrize("m", range(2, 19))
def test_maj_polynomial_methods_agree(m):
    rec = maj_polynomial(m)
    assert rec == maj_polynomial(m, "direct")
    assert poly_eval(rec, 1) == fibonacci(m + 2)
    assert len(rec) - 1 <= m * (m - 1) // 2


@pytest.mark.parametrize("n", range(3, 17))
def test_derivative_identity(n):
    assert poly_eval(poly_derivative(maj_polynomial(n - 1)), 1) == f312_via_maj(n)


def test_f312_examples():
    assert (f312_via_maj(3), f312_via_maj(4), f312_via_maj(6)) == (1, 5, 40)


@pytest.mark.parametrize("n", range(3, 19))
def test_maj_sum_matches_series(n):
    assert f312_via_maj(n) == series_coefficient("t1_312", n)


@pytest.mark.parametrize("n", range(3, 31))
def test_t1_completeness_and_aux(n):
    f312, f321 = series_coefficient("t1_312", n), series_coefficient("t1_321", n)
    assert 2 * f312 + f321 == comb(n, 3) * fibonacci(n + 1)
    assert gf_coefficients(FIB_SHIFT_GF, 30)[n] == fibonacci(n + 1)
    assert gf_coefficients(BINOM_FIB_GF, 30)[n] == comb(n, 3) * fibonacci(n + 1)


def test_series_cache_crosses_block():
    direct = gf_coefficients(T1_321_GF, 130)
    assert series_coefficient("t1_321", 130) == direct[130]
    assert series_coefficient("t1_321", 63) == direct[63]
