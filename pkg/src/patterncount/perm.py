"""
Permutations in one-line notation, pattern occurrences, and the symmetries
complement / reverse / inverse.

Permutations are plain tuples of the values ``1..n``; positions reported in
occurrences are 1-based.

>>> count_occurrences((8, 9, 7, 5, 4, 3, 6, 1, 2), (2, 3, 1))
13
>>> apply_symmetry((2, 3, 1), "i")
(3, 1, 2)
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from itertools import combinations, permutations
from math import comb

__all__ = [
    "Perm", "Pattern", "Occurrence", "PATTERNS3", "SYMMETRY_OPS",
    "is_perm", "check_perm", "parse_perm", "format_perm", "standardize",
    "count_occurrences", "list_occurrences", "iter_occurrences", "contains",
    "avoids", "complement", "reverse", "inverse", "apply_symmetry",
    "normalize_word", "invert_word", "length3_counts",
]

# a permutation of 1..n in one-line notation
Perm = tuple[int, ...]
# a pattern is just a (short) permutation
Pattern = tuple[int, ...]
# strictly increasing 1-based positions into a host permutation
Occurrence = tuple[int, ...]

# the six patterns of length 3, in lexicographic order
PATTERNS3: tuple[Pattern, ...] = tuple(permutations((1, 2, 3)))

SYMMETRY_OPS = ("c", "r", "i")
_OP_ALIASES = {
    "c": "c", "complement": "c",
    "r": "r", "reverse": "r",
    "i": "i", "inv": "i", "inverse": "i",
}


def is_perm(seq: Sequence[int]) -> bool:
    return sorted(seq) == list(range(1, len(seq) + 1))


def check_perm(seq: Iterable[int]) -> Perm:
    """Return ``seq`` as a tuple, raising ``ValueError`` unless it is a permutation of 1..n."""
    perm = tuple(int(v) for v in seq)
    if not is_perm(perm):
        raise ValueError(f"not a permutation of 1..{len(perm)}: {perm}")
    return perm


def parse_perm(text: str) -> Perm:
    """
    Parse ``"231"``, ``"2 3 1"`` or ``"2,3,1"``.

    The compact digit form is only unambiguous for n <= 9; longer permutations
    must be separated by spaces or commas.
    """
    text = text.strip()
    if not text:
        return ()
    if any(sep in text for sep in " ,"):
        parts = text.replace(",", " ").split()
    else:
        parts = list(text)
    try:
        return check_perm(int(p) for p in parts)
    except ValueError as exc:
        raise ValueError(f"bad permutation {text!r}: {exc}") from None


def format_perm(perm: Sequence[int]) -> str:
    if len(perm) <= 9:
        return "".join(map(str, perm))
    return " ".join(map(str, perm))


def standardize(values: Sequence[int]) -> Pattern:
    """Replace distinct values by their ranks 1..k."""
    order = sorted(values)
    rank = {v: r for r, v in enumerate(order, 1)}
    return tuple(rank[v] for v in values)


def iter_occurrences(sigma: Sequence[int], q: Sequence[int]) -> Iterator[Occurrence]:
    """Yield 1-based index tuples of occurrences of ``q`` in ``sigma``, lexicographically."""
    k = len(q)
    q = tuple(q)
    for idx in combinations(range(len(sigma)), k):
        if standardize([sigma[i] for i in idx]) == q:
            yield tuple(i + 1 for i in idx)


def list_occurrences(sigma: Sequence[int], q: Sequence[int]) -> list[Occurrence]:
    return list(iter_occurrences(sigma, q))


def count_occurrences(sigma: Sequence[int], q: Sequence[int]) -> int:
    """Number of index tuples ``i_1 < ... < i_k`` whose entries are order-isomorphic to ``q``."""
    return sum(1 for _ in iter_occurrences(sigma, q))


def contains(sigma: Sequence[int], q: Sequence[int]) -> bool:
    return next(iter_occurrences(sigma, q), None) is not None


def avoids(sigma: Sequence[int], patterns: Iterable[Sequence[int]]) -> bool:
    return not any(contains(sigma, q) for q in patterns)


def complement(sigma: Sequence[int]) -> Perm:
    n = len(sigma)
    return tuple(n + 1 - v for v in sigma)


def reverse(sigma: Sequence[int]) -> Perm:
    return tuple(reversed(sigma))


def inverse(sigma: Sequence[int]) -> Perm:
    inv = [0] * len(sigma)
    for pos, v in enumerate(sigma, 1):
        inv[v - 1] = pos
    return tuple(inv)


_OPS = {"c": complement, "r": reverse, "i": inverse}


def normalize_word(word: str | Iterable[str]) -> tuple[str, ...]:
    """
    Accept ``"cr"``, ``["complement", "reverse"]`` and similar; return single-letter ops.
    """
    if isinstance(word, str):
        word = [word] if word in _OP_ALIASES and len(word) > 1 else list(word)
    out = []
    for op in word:
        try:
            out.append(_OP_ALIASES[op])
        except KeyError:
            raise ValueError(f"unknown symmetry operation {op!r}") from None
    return tuple(out)


def invert_word(word: str | Iterable[str]) -> tuple[str, ...]:
    # each op is an involution, so the inverse word is the reversed word
    return tuple(reversed(normalize_word(word)))


def apply_symmetry(sigma: Sequence[int], word: str | Iterable[str]) -> Perm:
    """Apply the ops of ``word`` left to right."""
    perm = tuple(sigma)
    for op in normalize_word(word):
        perm = _OPS[op](perm)
    return perm


def length3_counts(sigma: Sequence[int]) -> dict[Pattern, int]:
    """
    Occurrence counts of all six length-3 patterns in O(n^2).

    Uses, per middle entry, the numbers of smaller/larger entries on each side,
    plus two pair sums that split the mixed patterns apart. Must agree with
    :func:`count_occurrences`.
    """
    n = len(sigma)
    c123 = c321 = mid_max = mid_min = 0
    first_min = 0    # triples whose first entry is the smallest: 123 + 132
    first_lt_last = 0  # triples with first < last: 123 + 132 + 213
    for j in range(n):
        v = sigma[j]
        ls = sum(1 for i in range(j) if sigma[i] < v)
        lg = j - ls
        rs = sum(1 for k in range(j + 1, n) if sigma[k] < v)
        rg = n - 1 - j - rs
        c123 += ls * rg
        c321 += lg * rs
        mid_max += ls * rs
        mid_min += lg * rg
        first_min += rg * (rg - 1) // 2
        for k in range(j + 2, n):
            if sigma[k] > v:
                first_lt_last += k - j - 1
    c132 = first_min - c123
    c213 = first_lt_last - c123 - c132
    c231 = mid_max - c132
    c312 = mid_min - c213
    counts = {
        (1, 2, 3): c123, (1, 3, 2): c132, (2, 1, 3): c213,
        (2, 3, 1): c231, (3, 1, 2): c312, (3, 2, 1): c321,
    }
    assert sum(counts.values()) == comb(n, 3)
    return counts
