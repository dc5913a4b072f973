"""
Brute-force ground truth over all of S_n, and the cross-method verification
report.

The full pattern table for S_n is computed in shards keyed by the first entry
of the permutation; shards are summed, so the result does not depend on the
number of workers.
"""

from __future__ import annotations

import csv
import io
import json
import os
import time
from collections.abc import Callable, Iterable, Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

from . import formulas
from .classes import (
    CANONICAL, ClassId, all_pattern_sets, canonical_class, format_pattern_set,
    generate, pattern_set_of,
)
from .genfunc import NAMED_GFS, f312_via_maj, gf_coefficients
from .perm import PATTERNS3, Pattern, Perm, avoids, length3_counts

__all__ = [
    "DEFAULT_CEILING", "HARD_CEILING", "CeilingError", "oracle_ceiling", "filter_avoiders",
    "grow_avoiders", "pattern_table", "pattern_total", "oracle_cardinality",
    "structural_totals", "count_total", "METHODS", "methods_for", "Cell",
    "VerificationReport", "verify_all",
]

DEFAULT_CEILING = 9
HARD_CEILING = 11
CEILING_ENV = "PATTERNCOUNT_ORACLE_CEILING"


class CeilingError(ValueError):
    """Raised when an exhaustive scan of S_n is requested above the oracle ceiling."""


def oracle_ceiling() -> int:
    raw = os.environ.get(CEILING_ENV)
    value = int(raw) if raw else DEFAULT_CEILING
    return min(value, HARD_CEILING)


def _check_ceiling(n: int, ceiling: int | None) -> None:
    limit = oracle_ceiling() if ceiling is None else ceiling
    if n > HARD_CEILING or n > limit:
        raise CeilingError(f"n={n} exceeds the oracle ceiling {min(limit, HARD_CEILING)}")


# code = 4*(x<y) + 2*(y<z) + (x<z)  ->  column in PATTERNS3 order
_CODE_TO_COLUMN = {7: 0, 5: 1, 3: 2, 4: 3, 2: 4, 0: 5}
_ONE_HOT = np.zeros((8, 6), dtype=np.int64)
for _code, _col in _CODE_TO_COLUMN.items():
    _ONE_HOT[_code, _col] = 1
_BITS = 1 << np.arange(6, dtype=np.int64)


def filter_avoiders(n: int, patterns, ceiling: int | None = None) -> Iterator[Perm]:
    """Stream the members of S_n avoiding every pattern, in lexicographic order."""
    _check_ceiling(n, ceiling)
    patterns = list(pattern_set_of(patterns))
    if n == 0:
        yield ()
        return
    if any(len(p) != 3 for p in patterns):
        for sigma in permutations(range(1, n + 1)):
            if avoids(sigma, patterns):
                yield sigma
        return
    forbidden = _mask(patterns)
    for first in range(1, n + 1):
        arr, masks = _block_masks(n, first)
        for row in arr[(masks & forbidden) == 0]:
            yield tuple(int(v) for v in row)


def grow_avoiders(n: int, patterns) -> Iterator[Perm]:
    """
    Depth-first growth of avoiders entry by entry, pruning any prefix that already
    contains a forbidden length-3 pattern. Lexicographic order; no ceiling.
    """
    patterns = set(pattern_set_of(patterns))
    if any(len(p) != 3 for p in patterns):
        raise ValueError("grow_avoiders handles length-3 patterns only")
    forbidden = {code for code, col in _CODE_TO_COLUMN.items() if PATTERNS3[col] in patterns}
    prefix: list[int] = []
    unused = set(range(1, n + 1))

    def ok(z: int) -> bool:
        m = len(prefix)
        for i in range(m):
            x = prefix[i]
            for j in range(i + 1, m):
                y = prefix[j]
                if (4 * (x < y) + 2 * (y < z) + (x < z)) in forbidden:
                    return False
        return True

    def rec() -> Iterator[Perm]:
        if not unused:
            yield tuple(prefix)
            return
        for v in sorted(unused):
            if ok(v):
                prefix.append(v)
                unused.remove(v)
                yield from rec()
                unused.add(v)
                prefix.pop()

    yield from rec()


def _block(n: int, first: int) -> tuple[np.ndarray, np.ndarray]:
    """Permutations of S_n starting with ``first`` (lexicographic) and their pattern counts."""
    rest = [v for v in range(1, n + 1) if v != first]
    arr = np.array([(first,) + p for p in permutations(rest)], dtype=np.int8).reshape(-1, n)
    counts = np.zeros((len(arr), 6), dtype=np.int64)
    for i, j, k in combinations(range(n), 3):
        x, y, z = arr[:, i], arr[:, j], arr[:, k]
        code = 4 * (x < y) + 2 * (y < z) + (x < z)
        counts += _ONE_HOT[code]
    return arr, counts


@lru_cache(maxsize=32)
def _block_masks(n: int, first: int) -> tuple[np.ndarray, np.ndarray]:
    arr, counts = _block(n, first)
    return arr, (counts > 0).astype(np.int64) @ _BITS


def _shard_table(n: int, firsts: Sequence[int]) -> dict[int, list[int]]:
    """mask -> [members, total_123, ..., total_321] over permutations starting with ``firsts``."""
    out: dict[int, list[int]] = {}
    for first in firsts:
        _, counts = _block(n, first)
        masks = (counts > 0).astype(np.int64) @ _BITS
        for mask in np.unique(masks):
            sel = masks == mask
            row = out.setdefault(int(mask), [0] * 7)
            row[0] += int(sel.sum())
            for c, total in enumerate(counts[sel].sum(axis=0).tolist()):
                row[c + 1] += total
    return out


def _merge(tables: Iterable[dict[int, list[int]]]) -> dict[int, tuple[int, ...]]:
    merged: dict[int, list[int]] = {}
    for table in tables:
        for mask, row in table.items():
            acc = merged.setdefault(mask, [0] * 7)
            for c, v in enumerate(row):
                acc[c] += v
    return {mask: tuple(row) for mask, row in sorted(merged.items())}


@lru_cache(maxsize=None)
def _pattern_table(n: int, shards: int) -> dict[int, tuple[int, ...]]:
    if n == 0:
        return {0: (1, 0, 0, 0, 0, 0, 0)}
    firsts = list(range(1, n + 1))
    chunks = [firsts[i::shards] for i in range(shards)]
    if shards == 1:
        return _merge([_shard_table(n, firsts)])
    with ProcessPoolExecutor(max_workers=shards) as pool:
        return _merge(pool.map(_shard_table, [n] * len(chunks), chunks))


def pattern_table(n: int, shards: int = 1, ceiling: int | None = None) -> dict[int, tuple[int, ...]]:
    """
    Group S_n by the set of length-3 patterns each permutation contains.

    Keys are bitmasks over ``PATTERNS3``; values are
    ``(number of permutations, total 123, total 132, ..., total 321)``.
    """
    _check_ceiling(n, ceiling)
    return _pattern_table(n, max(1, min(shards, n)))


def _mask(patterns) -> int:
    return sum(1 << PATTERNS3.index(p) for p in pattern_set_of(patterns))


def pattern_total(n: int, patterns, q: Sequence[int], shards: int = 1,
                  ceiling: int | None = None) -> int:
    """``f_q(S_n(R))`` by exhaustive scan of S_n."""
    col = PATTERNS3.index(tuple(q)) + 1
    forbidden = _mask(patterns)
    return sum(row[col] for mask, row in pattern_table(n, shards, ceiling).items()
               if not mask & forbidden)


def oracle_cardinality(n: int, patterns, shards: int = 1, ceiling: int | None = None) -> int:
    forbidden = _mask(patterns)
    return sum(row[0] for mask, row in pattern_table(n, shards, ceiling).items()
               if not mask & forbidden)


@lru_cache(maxsize=256)
def _structural_totals(key, n: int) -> tuple[int, ...]:
    totals = [0] * 6
    for sigma in generate(key, n):
        counts = length3_counts(sigma)
        for c, p in enumerate(PATTERNS3):
            totals[c] += counts[p]
    return tuple(totals)


def _hashable_key(key):
    if isinstance(key, ClassId):
        return key
    if isinstance(key, str) and key in ClassId.__members__:
        return ClassId(key)
    return pattern_set_of(key)


def structural_totals(key, n: int) -> dict[Pattern, int]:
    """Totals of all six patterns over the structurally generated class."""
    return dict(zip(PATTERNS3, _structural_totals(_hashable_key(key), n)))


METHODS = ("formula", "structural", "oracle", "gf", "sum", "maj")

_GF_NAMES = {(2, 3, 1): "t1_231", (3, 1, 2): "t1_312", (3, 2, 1): "t1_321"}


def methods_for(key, q: Sequence[int]) -> list[str]:
    """Counting methods that apply to ``(key, q)``, oracle aside from its ceiling."""
    cid, q0 = formulas.transport(_hashable_key(key), q)
    out = ["formula", "structural", "oracle"]
    if cid is ClassId.T1 and q0 in _GF_NAMES:
        out.append("gf")
        if q0 in ((2, 3, 1), (3, 1, 2)):
            out.append("maj")
    if (cid, q0) in formulas.COMPOSITION_SUM_KEYS or (
            cid is ClassId.D5 and q0 in ((2, 1, 3), (3, 1, 2))):
        out.append("sum")
    return out


def count_total(key, q: Sequence[int], n: int, method: str = "formula",
                shards: int = 1, ceiling: int | None = None) -> int:
    """``f_q(S_n(R))`` by the chosen method."""
    key = _hashable_key(key)
    q = tuple(q)
    if q not in PATTERNS3:
        raise ValueError(f"{q} is not a pattern of length 3")
    if method not in methods_for(key, q):
        raise ValueError(f"method {method!r} does not apply to this class and pattern")
    if method == "formula":
        return formulas.closed_form(key, q, n)
    if method == "structural":
        return structural_totals(key, n)[q] if n >= 1 else 0
    if method == "oracle":
        patterns = CANONICAL[key] if isinstance(key, ClassId) else key
        return pattern_total(n, patterns, q, shards, ceiling)
    cid, q0 = formulas.transport(key, q)
    if method == "gf":
        return gf_coefficients(NAMED_GFS[_GF_NAMES[q0]], n)[n] if n >= 0 else 0
    if method == "maj":
        return f312_via_maj(n)
    if cid is ClassId.D5:
        return formulas.pair_sum(q0, n) if n >= 3 else 0
    return formulas.composition_sum(cid, q0, n)


@dataclass
class Cell:
    patterns: str
    class_id: str
    word: str
    pattern: str
    n: int
    values: dict[str, int]

    @property
    def ok(self) -> bool:
        return len(set(self.values.values())) <= 1

    @property
    def label(self) -> str:
        return f"S_{self.n}({self.patterns}) q={self.pattern}"

    def as_dict(self) -> dict:
        return {
            "patterns": self.patterns,
            "class": self.class_id,
            "word": self.word,
            "pattern": self.pattern,
            "n": self.n,
            "values": {m: str(v) for m, v in self.values.items()},
            "status": "PASS" if self.ok else "FAIL",
        }


@dataclass
class VerificationReport:
    n_max: int
    cells: list[Cell] = field(default_factory=list)
    timing: dict[str, float] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(cell.ok for cell in self.cells)

    def failures(self) -> list[Cell]:
        return [cell for cell in self.cells if not cell.ok]

    def as_dict(self) -> dict:
        return {
            "n_max": self.n_max,
            "status": "PASS" if self.ok else "FAIL",
            "cells": len(self.cells),
            "failures": [cell.label for cell in self.failures()],
            "timing_seconds": {k: round(v, 4) for k, v in self.timing.items()},
            "results": [cell.as_dict() for cell in self.cells],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["patterns", "class", "word", "pattern", "n", *METHODS, "status"])
        for cell in self.cells:
            writer.writerow([
                cell.patterns, cell.class_id, cell.word, cell.pattern, cell.n,
                *(cell.values.get(m, "") for m in METHODS),
                "PASS" if cell.ok else "FAIL",
            ])
        return buf.getvalue()


def verify_all(
    n_max: int,
    classes: Iterable | None = None,
    oracle_max: int | None = None,
    structural_max: int | None = None,
    sum_max: int = 14,
    shards: int = 1,
    closed_form: Callable[[object, Pattern, int], int] | None = None,
) -> VerificationReport:
    """
    Compare every available method on every (pattern set, pattern, n) cell for
    ``3 <= n <= n_max``. ``classes`` defaults to all 35 pattern sets; class ids
    stand for their canonical sets. Disagreements become FAIL cells.
    """
    evaluate = closed_form or formulas.closed_form
    oracle_max = min(n_max, oracle_ceiling()) if oracle_max is None else oracle_max
    structural_max = n_max if structural_max is None else structural_max
    sets = [pattern_set_of(k) for k in classes] if classes is not None else all_pattern_sets()
    report = VerificationReport(n_max)
    timing = dict.fromkeys(("formula", "oracle", "structural", "other"), 0.0)

    for patterns in sets:
        cid, word = canonical_class(patterns)
        for n in range(3, n_max + 1):
            for q in PATTERNS3:
                values: dict[str, int] = {}
                t0 = time.perf_counter()
                values["formula"] = evaluate(patterns, q, n)
                t1 = time.perf_counter()
                timing["formula"] += t1 - t0
                if n <= oracle_max:
                    values["oracle"] = pattern_total(n, patterns, q, shards, ceiling=oracle_max)
                t2 = time.perf_counter()
                timing["oracle"] += t2 - t1
                if n <= structural_max:
                    values["structural"] = structural_totals(patterns, n)[q]
                t3 = time.perf_counter()
                timing["structural"] += t3 - t2
                for method in methods_for(patterns, q):
                    if method == "gf" or (method in ("sum", "maj") and n <= sum_max):
                        values[method] = count_total(patterns, q, n, method)
                timing["other"] += time.perf_counter() - t3
                report.cells.append(Cell(
                    format_pattern_set(patterns), cid.value, "".join(word),
                    "".join(map(str, q)), n, values,
                ))
    report.timing = timing
    return report
