from fractions import Fraction
from math import comb

import pytest

from patterncount.classes import CANONICAL, ClassId, all_pattern_sets, cardinality, canonical_class
from patterncount.formulas import (
    COMPOSITION_SUM_KEYS, FORMULAS, RECURRENCES, TABLE_FORMS, closed_form, composition_sum,
    pair_sum, power_sum, table_form, transport,
)
from patterncount.oracle import structural_totals
from patterncount.perm import PATTERNS3, apply_symmetry

from tests.reference_values import TABLES

ALL_IDS = list(ClassId)


def _q(s):
    return tuple(int(c) for c in s)


@pytest.mark.parametrize("cid,q,n,value", [
    ("D1", "321", 8, 4801), ("D2", "123", 5, 23), ("D3", "213", 7, 560), ("D4", "231", 8, 1792),
    ("D5", "123", 6, 152), ("D5", "213", 8, 252), ("T2", "321", 7, 175), ("T3", "123", 8, 126),
    ("T5", "132", 6, 35), ("D1", "123", 100, 0),
])
def test_examples(cid, q, n, value):
    assert closed_form(cid, _q(q), n) == value


@pytest.mark.parametrize("name", sorted(TABLES))
def test_tables(name):
    for n, row in enumerate(TABLES[name], start=3):
        assert tuple(closed_form(name, q, n) for q in PATTERNS3) == row


def test_small_n_is_zero():
    assert all(closed_form(c, q, n) == 0 for c in ALL_IDS for q in PATTERNS3 for n in (0, 1, 2))


def test_avoided_patterns_are_zero():
    for cid in ALL_IDS:
        for q in CANONICAL[cid]:
            assert all(closed_form(cid, q, n) == 0 for n in range(3, 40))


def test_rejects_non_pattern():
    with pytest.raises(ValueError):
        closed_form("D1", (1, 2), 5)


def test_big_n_exact():
    # no float anywhere: a 400-digit value survives intact
    v = closed_form("D1", _q("321"), 1000)
    n = 1000
    assert 3 * (v - 1) == (n**3 - 6 * n * n + 14 * n - 15) * 2 ** (n - 2)


@pytest.mark.parametrize("key", sorted(TABLE_FORMS, key=str), ids=str)
def test_table_forms_match(key):
    cid, q = key
    for n in range(3, 31):
        assert table_form(cid, q, n) == closed_form(cid, q, n)


def test_printed_constant_is_a_typo():
    n = 3
    printed = (Fraction(7 * n**5, 120) - Fraction(n**4, 3) + Fraction(17 * n**3, 24)
               - Fraction(2 * n * n, 3) + Fraction(7, 30))
    assert printed == Fraction(8, 15)
    assert closed_form("D5", (1, 2, 3), 3) == 1


@pytest.mark.parametrize("key", sorted(COMPOSITION_SUM_KEYS, key=str), ids=str)
def test_composition_sums(key):
    cid, q = key
    for n in range(3, 15):
        assert composition_sum(cid, q, n) == closed_form(cid, q, n)


def test_composition_sum_examples():
    assert composition_sum("D1", _q("213"), 5) == 17
    assert composition_sum("D2", _q("231"), 4) == 8
    assert composition_sum("D4", _q("123"), 6) == 160
    with pytest.raises(ValueError):
        composition_sum("D1", _q("321"), 5)


def test_pair_sum():
    assert pair_sum(_q("213"), 5) == 21
    assert pair_sum(_q("312"), 4) == 6
    assert pair_sum(_q("213"), 3) == 1
    for n in range(3, 15):
        assert pair_sum(_q("213"), n) == pair_sum(_q("312"), n) == comb(n + 2, 5)
        assert pair_sum(_q("213"), n) == closed_form("D5", _q("213"), n)
    with pytest.raises(ValueError):
        pair_sum(_q("123"), 5)


def test_power_sum():
    assert power_sum(1, 5) == 10
    assert power_sum(3, 3) == 9
    assert power_sum(4, 4) == 98
    for p in (1, 2, 3, 4):
        for n in range(2, 40):
            assert power_sum(p, n) == power_sum(p, n, "literal")
    with pytest.raises(ValueError):
        power_sum(5, 4)


def test_fourth_power_printed_factor_is_wrong():
    printed = Fraction(4 * 3 * 7 * (3 * 16 - 3 * 4 + 1), 30)
    assert printed != 98 and printed.denominator != 1
    assert power_sum(4, 4) == 98


@pytest.mark.parametrize("cid,q,g", RECURRENCES, ids=lambda x: str(x) if not callable(x) else "g")
def test_recurrences(cid, q, g):
    for n in range(3, 30):
        assert closed_form(cid, q, n + 1) == 2 * closed_form(cid, q, n) + g(n)


def test_recurrence_initial_values():
    assert closed_form("D1", _q("213"), 3) == 1
    assert closed_form("D1", _q("231"), 3) == 1


@pytest.mark.parametrize("cid", ALL_IDS)
def test_completeness(cid):
    for n in range(3, 31):
        assert sum(closed_form(cid, q, n) for q in PATTERNS3) == comb(n, 3) * cardinality(cid, n)


@pytest.mark.parametrize("cid,group", [
    ("D1", ["231", "312"]), ("D2", ["231", "312"]), ("D3", ["123", "213", "312", "321"]),
    ("D4", ["123", "213", "231", "321"]), ("D5", ["213", "231", "312"]), ("T1", ["231", "312"]),
    ("T2", ["213", "312"]), ("T3", ["123", "312"]), ("T4", ["213", "231"]), ("T5", ["132", "213"]),
])
def test_equipopularity(cid, group):
    for n in range(3, 31):
        assert len({closed_form(cid, _q(q), n) for q in group}) == 1


def test_cross_class_identities():
    for n in range(3, 31):
        assert closed_form("T2", _q("321"), n) == closed_form("T4", _q("321"), n)
        assert closed_form("T3", _q("321"), n) == closed_form("T5", _q("321"), n)


@pytest.mark.parametrize("R", all_pattern_sets(), ids=lambda R: ",".join("".join(map(str, p)) for p in sorted(R)))
def test_transport(R):
    cid, word = canonical_class(R)
    for q in PATTERNS3:
        c, q0 = transport(R, q)
        assert c is cid and apply_symmetry(q0, word) == q


@pytest.mark.parametrize("cid", ALL_IDS)
def test_structural_agreement_to_16(cid):
    for n in range(3, 17):
        totals = structural_totals(cid, n)
        assert all(totals[q] == closed_form(cid, q, n) for q in PATTERNS3), n


def test_formula_table_covers_only_allowed_patterns():
    for cid, q in FORMULAS:
        assert q in PATTERNS3 and q not in CANONICAL[cid]
