"""
Closed forms for the total occurrence count ``f_q(S_n(R))`` of every length-3
pattern ``q`` over every doubly and triply restricted class, together with the
composition sums and 2-subset sums they were derived from.

All evaluation is exact: rational coefficients go through ``Fraction`` and the
result is checked to be integral.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb

from .classes import CANONICAL, ClassId, canonical_class, pattern_set_of
from .compositions import iter_compositions, times_pow2
from .genfunc import series_coefficient
from .perm import PATTERNS3, Pattern, apply_symmetry, avoids, count_occurrences, invert_word

__all__ = [
    "FORMULAS", "TABLE_FORMS", "closed_form", "canonical_closed_form", "table_form",
    "composition_sum", "COMPOSITION_SUM_KEYS", "pair_sum", "power_sum",
    "RECURRENCES", "transport",
]


def _int(x: Fraction | int) -> int:
    x = Fraction(x)
    if x.denominator != 1:
        raise ArithmeticError(f"formula produced non-integer {x}")
    return x.numerator


def _pow2(coeff: Fraction | int, e: int) -> Fraction:
    return Fraction(coeff) * (Fraction(2) ** e)


def _d1_213(n): return times_pow2(n - 3, n - 2) + 1
def _d1_231(n): return times_pow2(n * n - 5 * n + 8, n - 3) - 1
def _d1_321(n): return _int(_pow2(Fraction(n**3, 3) - 2 * n * n + Fraction(14 * n, 3) - 5, n - 2) + 1)
def _d2_123(n): return times_pow2(n - 4, n - 1) + n + 2
def _d2_231(n): return _int(_pow2(n * n - 7 * n + 16, n - 2) - n - 4)
def _d2_321(n): return _int(_pow2(Fraction(n**3, 3) - 3 * n * n + Fraction(38 * n, 3) - 24, n - 2) + n + 6)
def _binom_pow(n): return times_pow2(comb(n, 3), n - 3)
def _d5_123(n): return _int(Fraction(n * (7 * n**4 - 40 * n**3 + 85 * n**2 - 80 * n + 28), 120))
def _d5_mixed(n): return comb(n + 2, 5)
def _c3(n): return comb(n, 3)
def _c3_times(n): return (n - 2) * comb(n, 3)
def _c4(n): return comb(n + 1, 4)
def _t3_321(n): return _int(Fraction(n * (n - 2) * (n - 1) ** 2, 12))
def _t1_312(n): return series_coefficient("t1_312", n)
def _t1_321(n): return series_coefficient("t1_321", n)


def _p(s: str) -> Pattern:
    return tuple(int(ch) for ch in s)


# (canonical class, pattern) -> evaluator valid for n >= 3; absent keys are 0
FORMULAS: dict[tuple[ClassId, Pattern], Callable[[int], int]] = {
    (ClassId.D1, _p("213")): _d1_213,
    (ClassId.D1, _p("231")): _d1_231,
    (ClassId.D1, _p("312")): _d1_231,
    (ClassId.D1, _p("321")): _d1_321,
    (ClassId.D2, _p("123")): _d2_123,
    (ClassId.D2, _p("231")): _d2_231,
    (ClassId.D2, _p("312")): _d2_231,
    (ClassId.D2, _p("321")): _d2_321,
    **{(ClassId.D3, _p(q)): _binom_pow for q in ("123", "213", "312", "321")},
    **{(ClassId.D4, _p(q)): _binom_pow for q in ("123", "213", "231", "321")},
    (ClassId.D5, _p("123")): _d5_123,
    **{(ClassId.D5, _p(q)): _d5_mixed for q in ("213", "231", "312")},
    (ClassId.T1, _p("231")): _t1_312,
    (ClassId.T1, _p("312")): _t1_312,
    (ClassId.T1, _p("321")): _t1_321,
    (ClassId.T2, _p("213")): _c3,
    (ClassId.T2, _p("312")): _c3,
    (ClassId.T2, _p("321")): _c3_times,
    (ClassId.T3, _p("123")): _c4,
    (ClassId.T3, _p("312")): _c4,
    (ClassId.T3, _p("321")): _t3_321,
    (ClassId.T4, _p("213")): _c3,
    (ClassId.T4, _p("231")): _c3,
    (ClassId.T4, _p("321")): _c3_times,
    (ClassId.T5, _p("132")): _c4,
    (ClassId.T5, _p("213")): _c4,
    (ClassId.T5, _p("321")): _t3_321,
}


# equivalent alternative presentations of a few closed forms
TABLE_FORMS: dict[tuple[ClassId, Pattern], Callable[[int], Fraction]] = {
    (ClassId.D2, _p("231")): lambda n: _pow2(Fraction(n * n, 4) - Fraction(7 * n, 4) + 4, n) - n - 4,
    (ClassId.D2, _p("321")): lambda n: _pow2(
        Fraction(n**3, 12) - Fraction(3 * n * n, 4) + Fraction(38 * n, 12) - 6, n) + n + 6,
    # the linear term is 7n/30; a bare constant 7/30 would give 8/15 at n = 3
    (ClassId.D5, _p("123")): lambda n: (Fraction(7 * n**5, 120) - Fraction(n**4, 3)
                                        + Fraction(17 * n**3, 24) - Fraction(2 * n * n, 3)
                                        + Fraction(7 * n, 30)),
    **{(ClassId.D3, _p(q)): (lambda n: _pow2(comb(n, 3), n) / 8) for q in ("123", "213", "312", "321")},
    **{(ClassId.D4, _p(q)): (lambda n: _pow2(comb(n, 3), n) / 8) for q in ("123", "213", "231", "321")},
}


def table_form(cid: ClassId, q: Sequence[int], n: int) -> Fraction:
    return TABLE_FORMS[(ClassId(cid), tuple(q))](n)


@lru_cache(maxsize=None)
def _finite_class_total(cid: ClassId, q: Pattern, n: int) -> int:
    # D6 and DEGEN are empty from n = 5 on; below that, count directly
    if n >= 5:
        return 0
    return sum(
        count_occurrences(s, q)
        for s in permutations(range(1, n + 1))
        if avoids(s, CANONICAL[cid])
    )


def canonical_closed_form(cid: ClassId | str, q: Sequence[int], n: int) -> int:
    cid, q = ClassId(cid), tuple(q)
    if q not in PATTERNS3:
        raise ValueError(f"{q} is not a pattern of length 3")
    if n < 3:
        return 0
    if cid in (ClassId.D6, ClassId.DEGEN):
        return _finite_class_total(cid, q, n)
    fn = FORMULAS.get((cid, q))
    return fn(n) if fn is not None else 0


def transport(key, q: Sequence[int]) -> tuple[ClassId, Pattern]:
    """Canonical class and pattern whose total equals ``f_q(S_n(R))`` for ``R = key``."""
    if isinstance(key, ClassId) or (isinstance(key, str) and key in ClassId.__members__):
        return ClassId(key), tuple(q)
    cid, word = canonical_class(pattern_set_of(key))
    return cid, apply_symmetry(tuple(q), invert_word(word))


def closed_form(key, q: Sequence[int], n: int) -> int:
    """
    ``f_q(S_n(R))`` from the closed forms (or series coefficients for T1).

    ``key`` is a class id or any 2- or 3-set of patterns; non-canonical sets are
    carried to their canonical class along the inverse symmetry word.
    """
    cid, q = transport(key, q)
    return canonical_closed_form(cid, q, n)


# --- sums over compositions and 2-subsets ---------------------------------------

def _d1_213_term(c):
    return sum(comb(ci - 1, 2) for ci in c)


def _d1_231_term(c):
    total, tail = 0, 0
    for ci in reversed(c):
        total += tail * (ci - 1)
        tail += ci
    return total


def _d2_123_term(c):
    return sum(comb(ci, 3) for ci in c)


def _d2_231_term(c):
    k = len(c)
    return sum(c[j] * comb(c[i], 2) for i in range(k - 1) for j in range(i + 1, k))


def _d4_123_term(c):
    k = len(c)
    return sum(c[i - 1] * comb(k - i, 2) for i in range(1, k - 1))


COMPOSITION_SUM_KEYS = {
    (ClassId.D1, _p("213")): _d1_213_term,
    (ClassId.D1, _p("231")): _d1_231_term,
    (ClassId.D2, _p("123")): _d2_123_term,
    (ClassId.D2, _p("231")): _d2_231_term,
    (ClassId.D4, _p("123")): _d4_123_term,
}


def composition_sum(cid: ClassId | str, q: Sequence[int], n: int) -> int:
    """Evaluate the per-composition occurrence sum literally over all compositions of ``n``."""
    term = COMPOSITION_SUM_KEYS.get((ClassId(cid), tuple(q)))
    if term is None:
        raise ValueError(f"no composition sum for {cid} / {''.join(map(str, q))}")
    if n < 3:
        return 0
    return sum(term(c) for c in iter_compositions(n))


def pair_sum(q: Sequence[int], n: int) -> int:
    """Sums over ``1 <= k < m <= n`` giving f_213 and f_312 on S_n(132,321)."""
    q = tuple(q)
    if q == (2, 1, 3):
        term = lambda k, m: k * (m - k) * (n - m)
    elif q == (3, 1, 2):
        term = lambda k, m: k * comb(m - k, 2)
    else:
        raise ValueError("pair_sum is defined for 213 and 312 only")
    return sum(term(k, m) for k in range(1, n) for m in range(k + 1, n + 1))


def power_sum(p: int, n: int, method: str = "closed") -> int:
    """``sum_{k=1}^{n-1} k^p`` for p = 1..4."""
    if method == "literal":
        return sum(k**p for k in range(1, n))
    if p == 1:
        return n * (n - 1) // 2
    if p == 2:
        return n * (n - 1) * (2 * n - 1) // 6
    if p == 3:
        return (n * (n - 1)) ** 2 // 4
    if p == 4:
        # the commonly quoted "+1" in the last factor is wrong for an upper limit of n-1
        return n * (n - 1) * (2 * n - 1) * (3 * n * n - 3 * n - 1) // 30
    raise ValueError("p must be 1, 2, 3 or 4")


# first-order recurrences f(n+1) = 2 f(n) + g(n), valid for n >= 3
RECURRENCES: list[tuple[ClassId, Pattern, Callable[[int], int]]] = [
    (ClassId.D1, _p("213"), lambda n: (1 << (n - 1)) - 1),
    (ClassId.D1, _p("231"), lambda n: times_pow2(n - 2, n - 1) + 1),
    (ClassId.D2, _p("123"), lambda n: (1 << n) - n - 1),
    (ClassId.D2, _p("231"), lambda n: times_pow2(2 * n - 6, n - 1) + n + 3),
    (ClassId.D4, _p("123"), lambda n: times_pow2(n * n - n, n - 3)),
]
