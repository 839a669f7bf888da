"""Walks in the loosened Collatz graph.

The loosened graph lets ``g: n -> 3n + 1`` act on every positive integer and
``f: n -> n / 2`` on even ones.  Walking a tuple from a start vertex is the
ground truth that the closed-form LCF is checked against.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .lcf import (
    NotSatisfyingError,
    SatisfactionResult,
    as_tuple,
    eval_lcf,
    format_tuple,
)

__all__ = [
    "Step",
    "CycleWalk",
    "EdgeMultiset",
    "WalkFailure",
    "TRIVIAL_ANCHORS",
    "DEFAULT_STEP_CAP",
    "f",
    "g",
    "collatz_step",
    "loosened_children",
    "loosened_successors",
    "walk_tuple",
    "satisfying_walk",
    "fixed_point",
    "oracle_satisfies",
    "cycle_vertices",
    "is_trivial_tuple",
    "edge_multiset",
]

TRIVIAL_ANCHORS = frozenset({1, 2, 8, 16})
DEFAULT_STEP_CAP = 10**6


def f(n: int) -> int:
    return n // 2


def g(n: int) -> int:
    return 3 * n + 1


def collatz_step(n: int) -> int:
    if n < 1:
        raise ValueError(f"Collatz step needs a positive integer, got {n}")
    return n // 2 if n % 2 == 0 else 3 * n + 1


def loosened_children(n: int) -> set[int]:
    """Inverse relation L(n): vertices reached by stepping backwards from n."""
    if n < 1:
        raise ValueError(f"vertices are positive integers, got {n}")
    children = {2 * n}
    # L(1) = {2}: (1 - 1) / 3 = 0 is not a vertex.
    if n % 3 == 1 and n != 1:
        children.add((n - 1) // 3)
    return children


def loosened_successors(n: int) -> set[int]:
    """Forward relation l(n)."""
    if n < 1:
        raise ValueError(f"vertices are positive integers, got {n}")
    if n % 2 == 0:
        return {n // 2, 3 * n + 1}
    return {3 * n + 1}


@dataclass(frozen=True)
class Step:
    label: str
    src: int
    dst: int


@dataclass(frozen=True)
class CycleWalk:
    start: int
    steps: tuple[Step, ...]

    @property
    def g_count(self) -> int:
        return sum(1 for s in self.steps if s.label == "g")

    @property
    def g_vertices(self) -> list[int]:
        return [s.src for s in self.steps if s.label == "g"]

    def vertices(self) -> list[int]:
        """Visited vertices in order, start first and start again last."""
        return [self.start] + [s.dst for s in self.steps]

    def to_json(self) -> dict:
        return {
            "start": str(self.start),
            "steps": [{"label": s.label, "to": str(s.dst)} for s in self.steps],
        }

    @classmethod
    def from_json(cls, data: dict) -> "CycleWalk":
        start = int(data["start"])
        steps = []
        cur = start
        for item in data["steps"]:
            dst = int(item["to"])
            label = item["label"]
            if label not in ("f", "g"):
                raise ValueError(f"unknown step label {label!r}")
            if label == "g" and dst != 3 * cur + 1 or label == "f" and (cur % 2 or dst != cur // 2):
                raise ValueError(f"invalid {label}-step {cur} -> {dst}")
            steps.append(Step(label, cur, dst))
            cur = dst
        if cur != start:
            raise ValueError("walk does not return to its start")
        return cls(start, tuple(steps))

    def arrows(self) -> str:
        """Render as ``4 →g 13 →g 40 →f 20 ...``."""
        parts = [str(self.start)]
        for s in self.steps:
            parts.append(f"→{s.label} {s.dst}")
        return " ".join(parts)


@dataclass(frozen=True)
class EdgeMultiset:
    anchor: int
    counts: dict = field(hash=False)

    def vertex_counts(self) -> Counter:
        # every visit to a vertex leaves it along exactly one edge
        out: Counter = Counter()
        for (v, _label), c in self.counts.items():
            out[v] += c
        return out

    @property
    def g_total(self) -> int:
        return sum(c for (_v, label), c in self.counts.items() if label == "g")


class WalkFailure(Exception):
    """A tuple's walk from a start vertex did not close up.

    ``step`` is the 1-based index of the offending step (``None`` for a final
    mismatch), ``value`` the vertex at which it happened.
    """

    def __init__(self, message: str, tuple_: tuple[int, ...], start: int,
                 step: int | None, value: int):
        super().__init__(message)
        self.tuple = tuple_
        self.start = start
        self.step = step
        self.value = value


def walk_tuple(t: Sequence[int], x1: int, step_cap: int = DEFAULT_STEP_CAP) -> CycleWalk:
    """Apply ``g`` then ``f`` ``y_i`` times for each entry, starting at ``x1``.

    Returns the closed walk, or raises ``WalkFailure`` when an odd number
    would have to be halved or the walk ends away from ``x1``.
    """
    t = as_tuple(t)
    if x1 < 1:
        raise ValueError(f"start vertex must be positive, got {x1}")
    total = len(t) + sum(t)
    if total > step_cap:
        raise WalkFailure(f"walk needs {total} steps, cap is {step_cap}", t, x1, None, x1)
    steps = []
    cur = x1
    for y in t:
        nxt = 3 * cur + 1
        steps.append(Step("g", cur, nxt))
        cur = nxt
        for _ in range(y):
            if cur % 2:
                raise WalkFailure(
                    f"step {len(steps) + 1}: cannot halve odd vertex {cur}",
                    t, x1, len(steps) + 1, cur,
                )
            nxt = cur // 2
            steps.append(Step("f", cur, nxt))
            cur = nxt
    if cur != x1:
        raise WalkFailure(f"walk ends at {cur}, expected {x1}", t, x1, None, cur)
    return CycleWalk(x1, tuple(steps))


def fixed_point(t: Sequence[int]) -> Fraction:
    """Rational start vertex that the tuple's circuit maps to itself.

    Composes the affine maps ``x -> 3x + 1`` and ``x -> x / 2`` step by step
    and solves ``x = a*x + b``.  Deliberately avoids the closed form.
    """
    t = as_tuple(t)
    a, b = Fraction(1), Fraction(0)
    for y in t:
        a, b = 3 * a, 3 * b + 1
        for _ in range(y):
            a, b = a / 2, b / 2
    if a == 1:
        raise ZeroDivisionError("composite map is a translation")
    return b / (1 - a)


def oracle_satisfies(t: Sequence[int], step_cap: int = DEFAULT_STEP_CAP) -> SatisfactionResult:
    """Satisfaction decided by walking the graph rather than by the closed form."""
    t = as_tuple(t)
    x = fixed_point(t)
    raw = eval_lcf(t)
    if x.denominator != 1 or x <= 0:
        return SatisfactionResult(False, None, raw)
    try:
        walk_tuple(t, x.numerator, step_cap=step_cap)
    except WalkFailure as exc:
        # an integral fixed point always walks cleanly
        raise AssertionError(f"integral fixed point {x} but walk broke: {exc}") from exc
    return SatisfactionResult(True, x.numerator, raw)


def satisfying_walk(t: Sequence[int]) -> CycleWalk:
    """Walk of a satisfying tuple from its own LCF value."""
    t = as_tuple(t)
    raw = eval_lcf(t)
    if not raw.is_positive_integer:
        raise NotSatisfyingError(f"({format_tuple(t)}) does not satisfy the LCF")
    return walk_tuple(t, raw.numerator // raw.denominator)


def cycle_vertices(w: CycleWalk) -> set[int]:
    return {w.start, *(s.dst for s in w.steps)}


def is_trivial_tuple(t: Sequence[int]) -> bool:
    return not TRIVIAL_ANCHORS.isdisjoint(cycle_vertices(satisfying_walk(t)))


def edge_multiset(w: CycleWalk) -> EdgeMultiset:
    counts = Counter((s.src, s.label) for s in w.steps)
    return EdgeMultiset(w.start, dict(counts))
