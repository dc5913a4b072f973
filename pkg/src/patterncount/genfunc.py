"""
Exact rational generating functions, Fibonacci numbers and words, the major
index on Fibonacci words, and the q-polynomials ``M_m(q) = sum q^maj(w)``.

Polynomials are tuples of integer coefficients indexed by exponent.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from functools import lru_cache

__all__ = [
    "IntPoly", "RationalGF", "poly_trim", "poly_add", "poly_mul", "poly_pow",
    "poly_shift", "poly_eval", "poly_derivative", "parse_poly", "gf_coefficients",
    "fibonacci", "fib_words", "is_fib_word", "asc", "maj", "maj_polynomial",
    "f312_via_maj", "T1_312_GF", "T1_321_GF", "FIB_GF", "FIB_SHIFT_GF",
    "BINOM_FIB_GF", "NAMED_GFS", "series_coefficient",
]

IntPoly = tuple[int, ...]


def poly_trim(coeffs: Sequence[int]) -> IntPoly:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def poly_add(p: Sequence[int], q: Sequence[int]) -> IntPoly:
    out = [0] * max(len(p), len(q))
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return poly_trim(out)


def poly_mul(p: Sequence[int], q: Sequence[int]) -> IntPoly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly_trim(out)


def poly_pow(p: Sequence[int], e: int) -> IntPoly:
    out: IntPoly = (1,)
    for _ in range(e):
        out = poly_mul(out, p)
    return out


def poly_shift(p: Sequence[int], k: int) -> IntPoly:
    """Multiply by ``x^k``."""
    return poly_trim((0,) * k + tuple(p)) if p else ()


def poly_eval(p: Sequence[int], x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_derivative(p: Sequence[int]) -> IntPoly:
    return poly_trim([i * c for i, c in enumerate(p)][1:])


def parse_poly(text: str) -> IntPoly:
    """Parse ascending coefficients, e.g. ``"1,-1,-1"`` for ``1 - x - x^2``."""
    try:
        return poly_trim(int(t) for t in text.replace(" ", "").split(",") if t != "")
    except ValueError:
        raise ValueError(f"malformed polynomial coefficient list {text!r}") from None


@dataclass(frozen=True)
class RationalGF:
    """``numerator / denominator`` as a formal power series."""
    numerator: IntPoly
    denominator: IntPoly

    def __post_init__(self):
        object.__setattr__(self, "numerator", poly_trim(self.numerator))
        object.__setattr__(self, "denominator", poly_trim(self.denominator))
        if not self.denominator or self.denominator[0] not in (1, -1):
            raise ValueError("denominator constant term must be +1 or -1")


def gf_coefficients(gf: RationalGF, terms: int) -> list[int]:
    """
    The first ``terms + 1`` Maclaurin coefficients of ``gf``.

    Uses the recurrence ``d_0 a_n = p_n - sum_{j>=1} d_j a_{n-j}``, so
    each coefficient costs O(deg denominator).
    """
    num, den = gf.numerator, gf.denominator
    if not den or den[0] == 0:
        raise ValueError("denominator must have a nonzero constant term")
    d0 = den[0]
    out: list[int] = []
    for n in range(terms + 1):
        acc = num[n] if n < len(num) else 0
        for j in range(1, min(n, len(den) - 1) + 1):
            acc -= den[j] * out[n - j]
        q, r = divmod(acc, d0)
        if r:
            raise ArithmeticError("series has non-integer coefficients")
        out.append(q)
    return out


_FIB_DEN: IntPoly = (1, -1, -1)

# sum F_n x^n
FIB_GF = RationalGF((0, 1), _FIB_DEN)
# sum_{n>=3} f_231(n) x^n = sum_{n>=3} f_312(n) x^n over S_n(123,132,213)
T1_312_GF = RationalGF(poly_shift((1, 2), 3), poly_pow(_FIB_DEN, 3))
# sum_{n>=3} f_321(n) x^n over S_n(123,132,213)
T1_321_GF = RationalGF(poly_shift((1, 6, 12, 8), 3), poly_pow(_FIB_DEN, 4))
# sum_{n>=3} F_{n+1} x^n
FIB_SHIFT_GF = RationalGF(poly_shift((3, 2), 3), _FIB_DEN)
# sum_{n>=3} C(n,3) F_{n+1} x^n
BINOM_FIB_GF = RationalGF(poly_shift((3, 8, 6, 4), 3), poly_pow(_FIB_DEN, 4))

NAMED_GFS = {
    "fib": FIB_GF,
    "t1_312": T1_312_GF,
    "t1_231": T1_312_GF,
    "t1_321": T1_321_GF,
    "fib_shift": FIB_SHIFT_GF,
    "binom_fib": BINOM_FIB_GF,
}


@lru_cache(maxsize=None)
def _series_table(name: str, terms: int) -> tuple[int, ...]:
    return tuple(gf_coefficients(NAMED_GFS[name], terms))


def series_coefficient(name: str, n: int) -> int:
    """Coefficient of ``x^n`` in one of the named series (cached in blocks of 64)."""
    terms = max(64, ((n // 64) + 1) * 64)
    return _series_table(name, terms)[n]


def fibonacci(n: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def is_fib_word(w: Sequence[int]) -> bool:
    return all(b in (0, 1) for b in w) and not any(
        w[i] == 1 and w[i + 1] == 1 for i in range(len(w) - 1)
    )


def fib_words(m: int) -> Iterator[tuple[int, ...]]:
    """Binary words of length ``m`` without two consecutive ones, lexicographically."""
    if m < 0:
        raise ValueError("m must be nonnegative")

    def rec(prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if len(prefix) == m:
            yield prefix
            return
        yield from rec(prefix + (0,))
        if not prefix or prefix[-1] == 0:
            yield from rec(prefix + (1,))

    yield from rec(())


def asc(w: Sequence[int]) -> list[int]:
    """1-based ascent positions ``i`` with ``w_i < w_{i+1}``."""
    return [i for i in range(1, len(w)) if w[i - 1] < w[i]]


def maj(w: Sequence[int]) -> int:
    return sum(asc(w))


def maj_polynomial(m: int, method: str = "recurrence") -> IntPoly:
    """
    ``M_m(q)`` as coefficients in ``q``.

    ``method="direct"`` sums ``q^maj(w)`` over all words; ``"recurrence"`` runs
    ``M_m = M_{m-1} + q^{m-1} M_{m-2}`` from ``M_2 = 2 + q``, ``M_3 = 2 + q + 2q^2``.
    """
    if method == "direct":
        coeffs = [0] * (m * (m - 1) // 2 + 1)
        for w in fib_words(m):
            coeffs[maj(w)] += 1
        return poly_trim(coeffs)
    if method != "recurrence":
        raise ValueError(f"unknown method {method!r}")
    if m < 2:
        raise ValueError("recurrence starts at m = 2")
    prev, cur = (2, 1), (2, 1, 2)
    if m == 2:
        return prev
    for k in range(4, m + 1):
        prev, cur = cur, poly_add(cur, poly_shift(prev, k - 1))
    return cur


def f312_via_maj(n: int) -> int:
    """Total 312 count over S_n(123,132,213), as the maj sum over words of length n-1."""
    if n < 3:
        return 0
    return sum(maj(w) for w in fib_words(n - 1))
