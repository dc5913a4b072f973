"""Integer compositions and the four composition statistics a, b, c, d."""

from __future__ import annotations

from collections.abc import Iterator, Sequence

__all__ = [
    "Composition", "enumerate_compositions", "iter_compositions", "check_composition",
    "parse_composition", "composition_stat", "composition_stat_brute", "times_pow2",
]

# ordered positive parts; the composed integer is sum(parts)
Composition = tuple[int, ...]


def check_composition(parts: Sequence[int], n: int | None = None) -> Composition:
    parts = tuple(int(p) for p in parts)
    if not parts or any(p < 1 for p in parts):
        raise ValueError(f"composition parts must be positive and nonempty: {parts}")
    if n is not None and sum(parts) != n:
        raise ValueError(f"parts {parts} do not sum to {n}")
    return parts


def parse_composition(text: str) -> Composition:
    """Parse ``"2+1+4+2"``, ``"2,1,4,2"`` or ``"9=2+1+4+2"``."""
    total = None
    if "=" in text:
        lhs, text = text.split("=", 1)
        total = int(lhs)
    parts = text.replace("+", " ").replace(",", " ").split()
    return check_composition([int(p) for p in parts], total)


def iter_compositions(n: int) -> Iterator[Composition]:
    """Yield all compositions of ``n`` in lexicographic order of their parts."""
    if n < 1:
        raise ValueError("n must be positive")

    def rec(rest: int) -> Iterator[Composition]:
        for first in range(1, rest + 1):
            if first == rest:
                yield (first,)
            else:
                for tail in rec(rest - first):
                    yield (first,) + tail

    yield from rec(n)


def enumerate_compositions(n: int) -> list[Composition]:
    return list(iter_compositions(n))


def times_pow2(value: int, exponent: int) -> int:
    """Exact ``value * 2**exponent``; a negative exponent must divide evenly."""
    if exponent >= 0:
        return value << exponent
    q, r = divmod(value, 1 << -exponent)
    if r:
        raise ArithmeticError(f"{value} * 2^{exponent} is not an integer")
    return q


def composition_stat(kind: str, n: int) -> int:
    """
    Closed forms over all compositions ``c_1 + ... + c_k = n``:

    * ``a``: sum of last parts, ``2^n - 1``
    * ``b``: sum of ``c_k (c_k - 1)``, ``2^(n+1) - 2n - 2``
    * ``c``: sum of the number of parts, ``(n+1) 2^(n-2)``
    * ``d``: sum of ``k (k - 1)``, ``(n-1)(n+2) 2^(n-3)``
    """
    if n < 1:
        raise ValueError("n must be positive")
    if kind == "a":
        return (1 << n) - 1
    if kind == "b":
        return (1 << (n + 1)) - 2 * n - 2
    if kind == "c":
        return times_pow2(n + 1, n - 2)
    if kind == "d":
        return times_pow2((n - 1) * (n + 2), n - 3)
    raise ValueError(f"unknown composition statistic {kind!r}")


def composition_stat_brute(kind: str, n: int) -> int:
    if kind == "a":
        term = lambda c: c[-1]
    elif kind == "b":
        term = lambda c: c[-1] * (c[-1] - 1)
    elif kind == "c":
        term = len
    elif kind == "d":
        term = lambda c: len(c) * (len(c) - 1)
    else:
        raise ValueError(f"unknown composition statistic {kind!r}")
    return sum(term(c) for c in iter_compositions(n))
