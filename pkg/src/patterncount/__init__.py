"""Exact occurrence counts of length-3 patterns over doubly and triply restricted permutation classes."""

from .classes import ClassId, canonical_class, generate
from .formulas import closed_form
from .oracle import count_total, pattern_total, verify_all
from .perm import count_occurrences, parse_perm

__version__ = "0.1.0"

__all__ = [
    "ClassId", "canonical_class", "generate", "closed_form", "count_total",
    "pattern_total", "verify_all", "count_occurrences", "parse_perm",
]
