"""Rotation orbits of a tuple read as points in n-dimensional space.

Consecutive rotations are joined into a closed polygon.  All comparisons are
exact; floats only appear in exports, as a plotting convenience.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .lcf import NotSatisfyingError, as_tuple, format_tuple, is_satisfying, rotation_orbit

__all__ = [
    "OrbitPolygon",
    "orbit_polygon",
    "equal_edge_check",
    "object_fingerprint",
    "zero_axis_check",
    "diagonal_centroid",
    "cyclic_shift_closed",
    "to_csv",
    "to_json",
]


@dataclass(frozen=True)
class OrbitPolygon:
    n: int
    vertices: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]
    squared_lengths: tuple[int, ...]


def orbit_polygon(t: Sequence[int]) -> OrbitPolygon:
    t = as_tuple(t)
    n = len(t)
    vertices = tuple(rotation_orbit(t))
    edges = tuple((k, (k + 1) % n) for k in range(n))
    lengths = tuple(
        sum((a - b) ** 2 for a, b in zip(vertices[i], vertices[j])) for i, j in edges
    )
    return OrbitPolygon(n, vertices, edges, lengths)


def equal_edge_check(p: OrbitPolygon) -> bool:
    return len(set(p.squared_lengths)) <= 1


def _require_satisfying(t: Sequence[int]) -> tuple[int, ...]:
    t = as_tuple(t)
    if not is_satisfying(t):
        raise NotSatisfyingError(f"({format_tuple(t)}) does not satisfy the LCF")
    return t


def object_fingerprint(t: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Sorted vertex multiset of the orbit polygon of a satisfying tuple."""
    return tuple(sorted(orbit_polygon(_require_satisfying(t)).vertices))


def zero_axis_check(t: Sequence[int]) -> bool:
    t = _require_satisfying(t)
    if all(y == 2 for y in t):
        return True
    return all(0 in v for v in orbit_polygon(t).vertices)


def diagonal_centroid(p: OrbitPolygon) -> tuple[Fraction, ...]:
    return tuple(Fraction(sum(col), p.n) for col in zip(*p.vertices))


def cyclic_shift_closed(p: OrbitPolygon) -> bool:
    """Shifting every vertex's coordinates by one maps the vertex multiset to itself."""
    shifted = sorted(v[1:] + v[:1] for v in p.vertices)
    return shifted == sorted(p.vertices)


def to_csv(p: OrbitPolygon) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["vertex_index"] + [f"coord_{i}" for i in range(p.n)])
    for k, v in enumerate(p.vertices):
        w.writerow([k, *v])
    return buf.getvalue()


def to_json(p: OrbitPolygon) -> dict:
    return {
        "n": p.n,
        "vertices": [[str(c) for c in v] for v in p.vertices],
        "edges": [list(e) for e in p.edges],
        "squared_lengths": [str(x) for x in p.squared_lengths],
        # approximate; for plotting only
        "lengths_float": [math.sqrt(x) for x in p.squared_lengths],
    }
