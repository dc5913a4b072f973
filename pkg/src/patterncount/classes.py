"""
Registry of doubly and triply restricted avoidance classes ``S_n(R)`` for
sets ``R`` of length-3 patterns, with their structural generators.

Every 2- or 3-subset of S_3 is equivalent under complement / reverse / inverse
to exactly one canonical set below; :func:`canonical_class` finds it together
with a symmetry word carrying the canonical set onto ``R``.
"""

from __future__ import annotations

import enum
from collections import deque
from collections.abc import Iterable, Iterator, Sequence
from functools import lru_cache
from itertools import combinations, permutations, product
from math import comb

from .compositions import Composition, check_composition, iter_compositions
from .genfunc import fib_words, fibonacci, is_fib_word
from .perm import (
    PATTERNS3, Occurrence, Pattern, Perm, apply_symmetry, avoids, check_perm,
    parse_perm, standardize,
)

__all__ = [
    "ClassId", "CANONICAL", "PatternSet", "parse_pattern_set", "format_pattern_set",
    "pattern_set_of", "canonical_class", "all_pattern_sets", "cardinality", "generate",
    "generate_canonical", "phi1", "phi1_inv", "phi2", "phi2_inv", "phi4", "phi4_inv",
    "phi5", "phi5_inv", "psi1", "psi1_inv", "d3_placement", "t2_perm", "t3_perm",
    "t4_perm", "t5_perm", "insertion_build", "insertion_family", "structural_swap",
    "SWAPS", "right_to_left_maxima", "left_to_right_maxima",
]

PatternSet = frozenset  # frozenset[Pattern]


class ClassId(str, enum.Enum):
    D1 = "D1"
    D2 = "D2"
    D3 = "D3"
    D4 = "D4"
    D5 = "D5"
    D6 = "D6"
    T1 = "T1"
    T2 = "T2"
    T3 = "T3"
    T4 = "T4"
    T5 = "T5"
    DEGEN = "DEGEN"

    def __str__(self) -> str:
        return self.value


def _ps(*patterns: str) -> frozenset[Pattern]:
    return frozenset(parse_perm(p) for p in patterns)


CANONICAL: dict[ClassId, frozenset[Pattern]] = {
    ClassId.D1: _ps("123", "132"),
    ClassId.D2: _ps("132", "213"),
    ClassId.D3: _ps("132", "231"),
    ClassId.D4: _ps("132", "312"),
    ClassId.D5: _ps("132", "321"),
    ClassId.D6: _ps("123", "321"),
    ClassId.T1: _ps("123", "132", "213"),
    ClassId.T2: _ps("123", "132", "231"),
    ClassId.T3: _ps("132", "213", "231"),
    ClassId.T4: _ps("123", "132", "312"),
    ClassId.T5: _ps("123", "231", "312"),
    # the four 3-sets containing {123, 321} are mutually equivalent
    ClassId.DEGEN: _ps("123", "132", "321"),
}


def format_pattern_set(patterns: Iterable[Sequence[int]]) -> str:
    return ",".join(sorted("".join(map(str, p)) for p in patterns))


def parse_pattern_set(text: str) -> frozenset[Pattern]:
    """Parse ``"123,132"``; every entry must be a permutation of length 3."""
    items = [t for t in text.replace(" ", "").split(",") if t]
    patterns = []
    for item in items:
        p = parse_perm(item)
        if len(p) != 3:
            raise ValueError(f"pattern {item!r} is not of length 3")
        patterns.append(p)
    if len(set(patterns)) != len(patterns):
        raise ValueError(f"repeated pattern in {text!r}")
    return frozenset(patterns)


def pattern_set_of(key: ClassId | str | Iterable[Sequence[int]]) -> frozenset[Pattern]:
    if isinstance(key, ClassId):
        return CANONICAL[key]
    if isinstance(key, str):
        if key in ClassId.__members__:
            return CANONICAL[ClassId(key)]
        return parse_pattern_set(key)
    return frozenset(tuple(p) for p in key)


def all_pattern_sets() -> list[frozenset[Pattern]]:
    """All 15 pairs and 20 triples of length-3 patterns."""
    return [frozenset(c) for k in (2, 3) for c in combinations(PATTERNS3, k)]


def _words(max_len: int = 4) -> list[tuple[str, ...]]:
    out = []
    for length in range(max_len + 1):
        out.extend(product("cir", repeat=length))
    return out


_WORDS = _words()


@lru_cache(maxsize=None)
def _canonical_lookup(patterns: frozenset[Pattern]) -> tuple[ClassId, tuple[str, ...]]:
    for cid, canon in CANONICAL.items():
        if len(canon) != len(patterns):
            continue
        for word in _WORDS:
            if frozenset(apply_symmetry(q, word) for q in canon) == patterns:
                return cid, word
    raise AssertionError(f"no canonical class for {sorted(patterns)}")


def canonical_class(key) -> tuple[ClassId, tuple[str, ...]]:
    """
    Return ``(class_id, word)`` with ``{apply_symmetry(q, word) : q in CANONICAL[class_id]} == R``.

    ``word`` is the shortest such word, lexicographically first among those.
    """
    patterns = pattern_set_of(key)
    if len(patterns) not in (2, 3):
        raise ValueError(f"need 2 or 3 patterns, got {len(patterns)}")
    for p in patterns:
        if sorted(p) != [1, 2, 3]:
            raise ValueError(f"{p} is not a pattern of length 3")
    return _canonical_lookup(patterns)


def _filter(n: int, patterns: Iterable[Pattern]) -> list[Perm]:
    patterns = list(patterns)
    return [s for s in permutations(range(1, n + 1)) if avoids(s, patterns)]


def cardinality(cid: ClassId | str, n: int) -> int:
    cid = ClassId(cid)
    if n < 1:
        raise ValueError("n must be positive")
    if cid in (ClassId.D1, ClassId.D2, ClassId.D3, ClassId.D4):
        return 1 << (n - 1)
    if cid is ClassId.D5:
        return comb(n, 2) + 1
    if cid is ClassId.T1:
        return fibonacci(n + 1)
    if cid in (ClassId.T2, ClassId.T3, ClassId.T4, ClassId.T5):
        return n
    # D6 and DEGEN: nothing survives Erdos-Szekeres from n = 5 on
    if n >= 5:
        return 0
    return len(_filter(n, CANONICAL[cid]))


# --- compositions <-> D1, D2, D4 -------------------------------------------

def right_to_left_maxima(sigma: Sequence[int]) -> list[int]:
    """1-based positions of right-to-left maxima, increasing."""
    out, best = [], 0
    for pos in range(len(sigma), 0, -1):
        if sigma[pos - 1] > best:
            best = sigma[pos - 1]
            out.append(pos)
    return out[::-1]


def left_to_right_maxima(sigma: Sequence[int]) -> list[int]:
    out, best = [], 0
    for pos, v in enumerate(sigma, 1):
        if v > best:
            best = v
            out.append(pos)
    return out


def _gaps(positions: Sequence[int]) -> Composition:
    return tuple(b - a for a, b in zip((0,) + tuple(positions[:-1]), positions))


def _require(sigma: Sequence[int], cid: ClassId) -> Perm:
    sigma = check_perm(sigma)
    if not avoids(sigma, CANONICAL[cid]):
        raise ValueError(f"{sigma} is not in S_n({format_pattern_set(CANONICAL[cid])})")
    return sigma


def phi1(parts: Sequence[int]) -> Perm:
    """Composition -> S_n(123,132): blocks ``m-1, m-2, ..., m-c+1, m`` with ``m`` the largest unused value."""
    parts = check_composition(parts)
    m = sum(parts)
    out: list[int] = []
    for c in parts:
        out.extend(range(m - 1, m - c, -1))
        out.append(m)
        m -= c
    return tuple(out)


def phi1_inv(sigma: Sequence[int]) -> Composition:
    sigma = _require(sigma, ClassId.D1)
    return _gaps(right_to_left_maxima(sigma))


def phi2(parts: Sequence[int]) -> Perm:
    """Composition -> S_n(132,213): ascending blocks ``m-c+1, ..., m``."""
    parts = check_composition(parts)
    m = sum(parts)
    out: list[int] = []
    for c in parts:
        out.extend(range(m - c + 1, m + 1))
        m -= c
    return tuple(out)


def phi2_inv(sigma: Sequence[int]) -> Composition:
    sigma = _require(sigma, ClassId.D2)
    return _gaps(right_to_left_maxima(sigma))


def phi4(parts: Sequence[int]) -> Perm:
    """
    Composition -> S_n(132,312).

    ``parts`` are the block lengths read left to right; each block opens with a
    left-to-right maximum followed by a decreasing run of small values.

    >>> phi4((3, 1, 2, 3))
    (6, 5, 4, 7, 8, 3, 9, 2, 1)
    """
    parts = check_composition(parts)
    n = sum(parts)
    c = parts[::-1]  # c[0] is the rightmost block
    blocks = []
    used = 0  # c_1 + ... + c_{i-1}
    for i, ci in enumerate(c, 1):
        if ci == 1:
            block = [n - i + 1]
        else:
            m = used - i + 2
            block = [n - i + 1] + list(range(m + ci - 2, m - 1, -1))
        blocks.append(block)
        used += ci
    return tuple(v for block in reversed(blocks) for v in block)


def phi4_inv(sigma: Sequence[int]) -> Composition:
    sigma = _require(sigma, ClassId.D4)
    pos = left_to_right_maxima(sigma) + [len(sigma) + 1]
    return tuple(b - a for a, b in zip(pos, pos[1:]))


# --- D5 ----------------------------------------------------------------------

def phi5(k: int, m: int, n: int) -> Perm:
    """2-subset ``{k < m}`` of [n] -> non-identity element of S_n(132,321) with ``sigma_k = m``."""
    if not 1 <= k < m <= n:
        raise ValueError(f"need 1 <= k < m <= n, got k={k}, m={m}, n={n}")
    return tuple(range(m - k + 1, m + 1)) + tuple(range(1, m - k + 1)) + tuple(range(m + 1, n + 1))


def phi5_inv(sigma: Sequence[int]) -> tuple[int, int]:
    sigma = _require(sigma, ClassId.D5)
    for k in range(1, len(sigma)):
        if sigma[k - 1] > sigma[k]:
            return k, sigma[k - 1]
    raise ValueError("the identity permutation has no 2-subset")


# --- T1 ----------------------------------------------------------------------

def psi1(w: Sequence[int]) -> Perm:
    """
    Fibonacci word of length n-1 -> S_n(123,132,213): take the largest remaining
    value for a 0 and the second largest for a 1.
    """
    w = tuple(int(b) for b in w)
    if not is_fib_word(w):
        raise ValueError(f"{w} is not a 0/1 word without consecutive ones")
    remaining = list(range(1, len(w) + 2))
    out = []
    for bit in w:
        out.append(remaining.pop(-1 - bit))
    out.append(remaining.pop())
    return tuple(out)


def psi1_inv(sigma: Sequence[int]) -> tuple[int, ...]:
    sigma = _require(sigma, ClassId.T1)
    remaining = sorted(sigma)
    word = []
    for v in sigma[:-1]:
        if v == remaining[-1]:
            word.append(0)
        elif v == remaining[-2]:
            word.append(1)
        else:
            raise ValueError(f"{sigma} is not an image of psi1")
        remaining.remove(v)
    return tuple(word)


# --- one-parameter families ---------------------------------------------------

def t2_perm(n: int, k: int) -> Perm:
    """``n, n-1, ..., k+1, k-1, ..., 1, k`` (1 <= k <= n), the members of S_n(123,132,231)."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    return tuple(range(n, k, -1)) + tuple(range(k - 1, 0, -1)) + (k,)


def t3_perm(n: int, k: int) -> Perm:
    """``n, ..., k+1, 1, 2, ..., k`` (1 <= k <= n), the members of S_n(132,213,231)."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    return tuple(range(n, k, -1)) + tuple(range(1, k + 1))


def t4_perm(n: int, k: int) -> Perm:
    """``n-1, ..., k+1, n, k, ..., 1`` (0 <= k <= n-1), the members of S_n(123,132,312)."""
    if not 0 <= k <= n - 1:
        raise ValueError("need 0 <= k <= n-1")
    return tuple(range(n - 1, k, -1)) + (n,) + tuple(range(k, 0, -1))


def t5_perm(n: int, k: int) -> Perm:
    """``k-1, ..., 1, n, n-1, ..., k`` (1 <= k <= n), the members of S_n(123,231,312)."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    return tuple(range(k - 1, 0, -1)) + tuple(range(n, k - 1, -1))


def d3_placement(choices: Sequence[int]) -> Perm:
    """
    Member of S_n(132,231) for n = len(choices) + 1: starting from ``1``, value
    ``v`` goes to the front (choice 0) or the back (choice 1) for v = 2..n.
    """
    seq = deque([1])
    for v, side in enumerate(choices, 2):
        if side:
            seq.append(v)
        else:
            seq.appendleft(v)
    return tuple(seq)


def _small_sorted(n: int, cid: ClassId) -> Iterator[Perm]:
    if n <= 4:
        yield from _filter(n, CANONICAL[cid])


def generate_canonical(cid: ClassId | str, n: int) -> Iterator[Perm]:
    """Stream the members of the canonical class ``cid`` from its structural description."""
    cid = ClassId(cid)
    if n < 1:
        raise ValueError("n must be positive")
    if cid is ClassId.D1:
        yield from map(phi1, iter_compositions(n))
    elif cid is ClassId.D2:
        yield from map(phi2, iter_compositions(n))
    elif cid is ClassId.D3:
        yield from map(d3_placement, product((0, 1), repeat=n - 1))
    elif cid is ClassId.D4:
        yield from map(phi4, iter_compositions(n))
    elif cid is ClassId.D5:
        yield tuple(range(1, n + 1))
        for k in range(1, n):
            for m in range(k + 1, n + 1):
                yield phi5(k, m, n)
    elif cid is ClassId.T1:
        yield from map(psi1, fib_words(n - 1))
    elif cid is ClassId.T2:
        yield from (t2_perm(n, k) for k in range(1, n + 1))
    elif cid is ClassId.T3:
        yield from (t3_perm(n, k) for k in range(1, n + 1))
    elif cid is ClassId.T4:
        yield from (t4_perm(n, k) for k in range(0, n))
    elif cid is ClassId.T5:
        yield from (t5_perm(n, k) for k in range(1, n + 1))
    else:  # D6, DEGEN: finite classes, filtered directly
        yield from _small_sorted(n, cid)


def generate(key, n: int) -> Iterator[Perm]:
    """
    Stream ``S_n(R)``; ``key`` is a :class:`ClassId` or any 2- or 3-set of patterns.

    Non-canonical sets are produced by pushing the canonical generator forward
    along the symmetry word.
    """
    if isinstance(key, ClassId) or (isinstance(key, str) and key in ClassId.__members__):
        yield from generate_canonical(key, n)
        return
    cid, word = canonical_class(key)
    for sigma in generate_canonical(cid, n):
        yield apply_symmetry(sigma, word)


# --- insertion construction on S_n(132,231) -----------------------------------

def _check_triple(n: int, values: Sequence[int]) -> tuple[int, int, int]:
    if n < 3:
        raise ValueError("n must be at least 3")
    values = tuple(int(v) for v in values)
    if len(values) != 3 or len(set(values)) != 3 or not all(1 <= v <= n for v in values):
        raise ValueError(f"need three distinct values in 1..{n}, got {values}")
    if standardize(values) in ((1, 3, 2), (2, 3, 1)):
        raise ValueError(f"{values} forms a pattern forbidden in S_n(132,231)")
    return values


def insertion_build(n: int, values: Sequence[int], choices: Sequence[int]) -> Perm:
    """
    Insert the values outside ``values`` in decreasing order, each beside the
    smallest elements placed so far; ``choices[i]`` picks the left (0) or the
    right (1) option for the i-th inserted value.
    """
    values = _check_triple(n, values)
    rest = sorted(set(range(1, n + 1)) - set(values), reverse=True)
    if len(choices) != len(rest):
        raise ValueError(f"need {len(rest)} choices, got {len(choices)}")
    seq = list(values)
    for r, side in zip(rest, choices):
        smaller = [i for i, v in enumerate(seq) if v < r]
        if len(smaller) >= 2:
            # immediately left of the leftmost smaller, or right of the rightmost
            idx = smaller[0] if side == 0 else smaller[-1] + 1
        else:
            anchor = smaller[0] if smaller else seq.index(min(seq))
            idx = anchor if side == 0 else anchor + 1
        seq.insert(idx, r)
    return tuple(seq)


def insertion_family(n: int, values: Sequence[int]) -> list[Perm]:
    """All ``2^(n-3)`` members of S_n(132,231) built around ``values``, indexed by choice word."""
    values = _check_triple(n, values)
    return [insertion_build(n, values, w) for w in product((0, 1), repeat=n - 3)]


# --- swap bijections on the one-parameter families ------------------------------

SWAPS = {
    (ClassId.T2, (2, 1, 3), (3, 1, 2)),
    (ClassId.T2, (3, 1, 2), (2, 1, 3)),
    (ClassId.T3, (1, 2, 3), (3, 1, 2)),
    (ClassId.T3, (3, 1, 2), (1, 2, 3)),
    (ClassId.T4, (2, 1, 3), (2, 3, 1)),
    (ClassId.T4, (2, 3, 1), (2, 1, 3)),
}


def _positions(sigma: Perm, values: Sequence[int]) -> Occurrence:
    where = {v: i for i, v in enumerate(sigma, 1)}
    return tuple(where[v] for v in values)


def structural_swap(
    cid: ClassId | str,
    sigma: Sequence[int],
    occ: Sequence[int],
    q_from: Sequence[int],
    q_to: Sequence[int],
) -> tuple[Perm, Occurrence]:
    """
    Map a ``q_from`` occurrence in a member of a one-parameter family to a
    ``q_to`` occurrence in (possibly) another member of the same family.

    Supported: T2 213<->312, T3 123<->312, T4 213<->231.
    """
    cid = ClassId(cid)
    q_from, q_to = tuple(q_from), tuple(q_to)
    if (cid, q_from, q_to) not in SWAPS:
        raise ValueError(f"no swap for {cid} {q_from} -> {q_to}")
    sigma = _require(sigma, cid)
    n = len(sigma)
    occ = tuple(occ)
    if (len(occ) != 3 or list(occ) != sorted(set(occ)) or not all(1 <= i <= n for i in occ)
            or standardize([sigma[i - 1] for i in occ]) != q_from):
        raise ValueError(f"{occ} is not an occurrence of {q_from} in {sigma}")
    x, y, z = (sigma[i - 1] for i in occ)

    if cid is ClassId.T2:
        # only ascent is at the last position, so the 213's "3" (and 312's "2") is last
        if q_from == (2, 1, 3):
            a, b, c = x, y, z
            new, vals = t2_perm(n, a), (c, b, a)
        else:
            c, b, a = x, y, z
            new, vals = t2_perm(n, c), (a, b, c)
    elif cid is ClassId.T3:
        k = n - sigma.index(1)
        if q_from == (1, 2, 3):
            a, b, c = x, y, z
            new, vals = t3_perm(n, c - 1), (n - k + c, a, b)
        else:
            c = k + 1
            new, vals = t3_perm(n, n - x + c), (y, z, c)
    else:
        k = n - 1 - sigma.index(n)
        if q_from == (2, 1, 3):
            a, b = x, y
            new, vals = t4_perm(n, n - a + k), (n - a + b, n, n - a)
        else:
            new, vals = t4_perm(n, k - z), (n - z, x - z, n)
    return new, _positions(new, vals)
