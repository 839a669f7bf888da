"""Exact evaluation of the Loosened Collatz Function (LCF).

A tuple ``(y_1, ..., y_n)`` of non-negative integers describes a circuit in the
loosened Collatz graph: ``y_i`` counts the halvings that follow the ``i``-th
application of ``n -> 3n + 1``.  The circuit closes on an integer vertex
exactly when

    F_L(Y) = sum_{i=1..n} 3^(n-i) * 2^(P_{i-1})  /  (2^(P_n) - 3^n)

is a positive integer, where ``P_m = y_1 + ... + y_m`` and ``P_0 = 0``.

Tuples are plain Python ``tuple`` objects of ``int``; everything here is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

__all__ = [
    "EmptyTupleError",
    "LcfValue",
    "SatisfactionResult",
    "NotSatisfyingError",
    "as_tuple",
    "parse_tuple",
    "format_tuple",
    "eval_lcf",
    "is_satisfying",
    "closed_form_vertex",
    "rotate",
    "rotation_orbit",
    "canonical_form",
    "least_rotation_index",
    "same_cycle",
]


class EmptyTupleError(ValueError):
    """Raised when an LCF operation receives the empty tuple."""


class NotSatisfyingError(ValueError):
    """Raised when an operation needs a satisfying tuple and did not get one."""


@dataclass(frozen=True)
class LcfValue:
    numerator: int
    denominator: int

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    @property
    def is_positive_integer(self) -> bool:
        return self.denominator > 0 and self.numerator % self.denominator == 0

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


@dataclass(frozen=True)
class SatisfactionResult:
    satisfying: bool
    value: Optional[int]
    raw: LcfValue

    def __bool__(self) -> bool:
        return self.satisfying

    def to_json(self) -> dict:
        return {
            "satisfying": self.satisfying,
            "value": None if self.value is None else str(self.value),
            "numerator": str(self.raw.numerator),
            "denominator": str(self.raw.denominator),
        }


def as_tuple(entries: Iterable[int], allow_empty: bool = False) -> tuple[int, ...]:
    """Validate ``entries`` and return them as a tuple of ints.

    Raises ``ValueError`` for negative or non-integer entries and
    ``EmptyTupleError`` for an empty sequence unless ``allow_empty``.
    """
    t = tuple(entries)
    for y in t:
        if isinstance(y, bool) or not isinstance(y, int):
            raise ValueError(f"tuple entries must be integers, got {y!r}")
        if y < 0:
            raise ValueError(f"tuple entries must be non-negative, got {y}")
    if not t and not allow_empty:
        raise EmptyTupleError("the LCF is undefined on the empty tuple")
    return t


def parse_tuple(text: str, allow_empty: bool = True) -> tuple[int, ...]:
    """Parse ``"0,3,2"`` (whitespace ignored; ``"()"`` brackets tolerated)."""
    body = "".join(text.split()).strip("()[]")
    if not body:
        return as_tuple((), allow_empty=allow_empty)
    try:
        entries = [int(part, 10) for part in body.split(",")]
    except ValueError:
        raise ValueError(f"cannot parse tuple {text!r}") from None
    return as_tuple(entries, allow_empty=allow_empty)


def format_tuple(t: Sequence[int]) -> str:
    return ",".join(str(y) for y in t)


def eval_lcf(t: Sequence[int]) -> LcfValue:
    t = as_tuple(t)
    numerator = 0
    prefix = 0
    # Horner form of sum 3^(n-i) * 2^(P_{i-1}).
    for y in t:
        numerator = 3 * numerator + (1 << prefix)
        prefix += y
    return LcfValue(numerator, (1 << prefix) - 3 ** len(t))


def is_satisfying(t: Sequence[int]) -> SatisfactionResult:
    raw = eval_lcf(t)
    if raw.is_positive_integer:
        return SatisfactionResult(True, raw.numerator // raw.denominator, raw)
    return SatisfactionResult(False, None, raw)


def closed_form_vertex(t: Sequence[int], x1: int, k: int) -> Fraction:
    """Return the ``k``-th vertex receiving a tripling step (1-based) of the
    circuit described by ``t`` when the first such vertex is ``x1``."""
    t = as_tuple(t)
    if not 1 <= k <= len(t):
        raise IndexError(f"vertex index {k} out of range 1..{len(t)}")
    acc = x1
    prefix = 0
    for y in t[: k - 1]:
        acc = 3 * acc + (1 << prefix)
        prefix += y
    return Fraction(acc, 1 << prefix)


def rotate(t: Sequence[int], k: int = 1) -> tuple[int, ...]:
    t = as_tuple(t)
    if k < 0:
        raise ValueError("rotation count must be non-negative")
    k %= len(t)
    return t[k:] + t[:k]


def rotation_orbit(t: Sequence[int]) -> list[tuple[int, ...]]:
    t = as_tuple(t)
    return [t[k:] + t[:k] for k in range(len(t))]


def least_rotation_index(t: Sequence[int]) -> int:
    # Booth's algorithm: linear-time lexicographically least rotation.
    s = list(t) * 2
    n = len(s)
    fail = [-1] * n
    k = 0
    for j in range(1, n):
        c = s[j]
        i = fail[j - k - 1]
        while i != -1 and c != s[k + i + 1]:
            if c < s[k + i + 1]:
                k = j - i - 1
            i = fail[i]
        if c != s[k + i + 1]:
            if c < s[k]:
                k = j
            fail[j - k] = -1
        else:
            fail[j - k] = i + 1
    return k


def canonical_form(t: Sequence[int]) -> tuple[int, ...]:
    t = as_tuple(t)
    k = least_rotation_index(t)
    return t[k:] + t[:k]


def same_cycle(a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff two satisfying tuples trace the same cycle."""
    for t in (a, b):
        if not is_satisfying(t):
            raise NotSatisfyingError(f"({format_tuple(t)}) does not satisfy the LCF")
    return canonical_form(a) == canonical_form(b)
