import pytest
from hypothesis import given, strategies as st

from patterncount.compositions import (
    composition_stat, composition_stat_brute, enumerate_compositions, parse_composition, times_pow2,
)


def test_small_listing():
    assert set(enumerate_compositions(3)) == {(3,), (2, 1), (1, 2), (1, 1, 1)}


@pytest.mark.parametrize("n", range(1, 13))
def test_count(n):
    comps = enumerate_compositions(n)
    assert len(comps) == len(set(comps)) == 2 ** (n - 1)
    assert all(sum(c) == n and min(c) >= 1 for c in comps)


def test_ten():
    assert len(enumerate_compositions(10)) == 512


@pytest.mark.parametrize("kind,n,value", [("a", 3, 7), ("b", 2, 2), ("c", 2, 3), ("d", 3, 10)])
def test_stat_examples(kind, n, value):
    assert composition_stat(kind, n) == composition_stat_brute(kind, n) == value


@pytest.mark.parametrize("kind", "abcd")
@pytest.mark.parametrize("n", range(1, 19))
def test_stat_closed_vs_brute(kind, n):
    assert composition_stat(kind, n) == composition_stat_brute(kind, n)


@pytest.mark.parametrize("text", ["2+1+4+2", "2,1,4,2", "9=2+1+4+2", "2 1 4 2"])
def test_parse(text):
    assert parse_composition(text) == (2, 1, 4, 2)


def test_parse_rejects_bad_total():
    with pytest.raises(ValueError):
        parse_composition("8=2+1+4+2")


@given(st.integers(-60, 60), st.integers(-5, 40))
def test_times_pow2(v, e):
    if e >= 0:
        assert times_pow2(v, e) == v * 2**e
    elif v % 2 ** (-e) == 0:
        assert times_pow2(v, e) * 2 ** (-e) == v
    else:
        with pytest.raises(ArithmeticError):
            times_pow2(v, e)
