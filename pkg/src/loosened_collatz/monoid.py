"""The concatenation monoid S_k of tuples whose LCF value is k.

Elements are tuples with ``F_L(t) == k`` together with the empty tuple as
identity.  Concatenation is closed, and every element splits uniquely into
atoms: the pieces obtained by cutting the walk from ``k`` every time it comes
back to ``k`` right before a tripling step.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .lcf import as_tuple, eval_lcf, format_tuple, rotate
from .walk import EdgeMultiset, edge_multiset, walk_tuple

__all__ = [
    "MembershipError",
    "AnchorMismatchError",
    "MonoidElement",
    "AtomDecomposition",
    "member",
    "identity",
    "concat",
    "equivalent",
    "return_positions",
    "rotation_return_positions",
    "is_atom",
    "decompose",
    "divides",
    "factorization_fingerprint",
]


class MembershipError(ValueError):
    pass


class AnchorMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class MonoidElement:
    tuple: tuple[int, ...]
    anchor: int

    @property
    def is_identity(self) -> bool:
        return not self.tuple

    def __len__(self) -> int:
        return len(self.tuple)

    def __mul__(self, other: "MonoidElement") -> "MonoidElement":
        return concat(self, other)


@dataclass(frozen=True)
class AtomDecomposition:
    anchor: int
    tuple: tuple[int, ...]
    atoms: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {
            "k": str(self.anchor),
            "tuple": list(self.tuple),
            "atoms": [list(a) for a in self.atoms],
        }

    @classmethod
    def from_json(cls, data: dict) -> "AtomDecomposition":
        k = int(data["k"])
        t = as_tuple(data["tuple"], allow_empty=True)
        atoms = tuple(as_tuple(a) for a in data["atoms"])
        if sum(atoms, ()) != t:
            raise ValueError("atoms do not concatenate to the tuple")
        return cls(k, t, atoms)


def member(t: Sequence[int], k: int) -> MonoidElement:
    if k < 1:
        raise MembershipError(f"anchor must be a positive integer, got {k}")
    t = as_tuple(t, allow_empty=True)
    if t:
        raw = eval_lcf(t)
        if raw.denominator <= 0 or raw.numerator != k * raw.denominator:
            raise MembershipError(f"F_L({format_tuple(t)}) = {raw}, not {k}")
    return MonoidElement(t, k)


def identity(k: int) -> MonoidElement:
    return member((), k)


def _check_anchor(a: MonoidElement, b: MonoidElement) -> None:
    if a.anchor != b.anchor:
        raise AnchorMismatchError(f"cannot combine elements of S_{a.anchor} and S_{b.anchor}")


def concat(a: MonoidElement, b: MonoidElement) -> MonoidElement:
    _check_anchor(a, b)
    out = a.tuple + b.tuple
    if out:
        raw = eval_lcf(out)
        assert raw.numerator == a.anchor * raw.denominator, "S_k not closed under concatenation"
    return MonoidElement(out, a.anchor)


def _edges(e: MonoidElement) -> EdgeMultiset:
    if e.is_identity:
        return EdgeMultiset(e.anchor, {})
    return edge_multiset(walk_tuple(e.tuple, e.anchor))


def equivalent(a: MonoidElement, b: MonoidElement) -> bool:
    """Edge-multiset equality of the circuits both elements trace from k."""
    if a.anchor != b.anchor or len(a) != len(b):
        return False
    return _edges(a).counts == _edges(b).counts


def return_positions(e: MonoidElement) -> list[int]:
    """Positions ``l`` in ``1..n-1`` after which the walk is back at ``k``."""
    if e.is_identity:
        return []
    xs = walk_tuple(e.tuple, e.anchor)
    return [l for l, v in enumerate(xs.g_vertices) if l and v == e.anchor]


def rotation_return_positions(e: MonoidElement) -> list[int]:
    """Same cut points as :func:`return_positions`, found by rotating instead."""
    out = []
    for l in range(1, len(e)):
        raw = eval_lcf(rotate(e.tuple, l))
        if raw.numerator == e.anchor * raw.denominator:
            out.append(l)
    return out


def is_atom(e: MonoidElement) -> bool:
    if e.is_identity:
        raise ValueError("the identity is a unit, not an atom")
    return not return_positions(e)


def decompose(e: MonoidElement) -> AtomDecomposition:
    if e.is_identity:
        raise ValueError("the identity has no atoms")
    cuts = [0, *return_positions(e), len(e)]
    atoms = tuple(e.tuple[i:j] for i, j in zip(cuts, cuts[1:]))
    return AtomDecomposition(e.anchor, e.tuple, atoms)


def _atom_counter(e: MonoidElement) -> Counter:
    return Counter() if e.is_identity else Counter(decompose(e).atoms)


def divides(a: MonoidElement, b: MonoidElement) -> bool:
    if a.anchor != b.anchor:
        return False
    need, have = _atom_counter(a), _atom_counter(b)
    return all(have[atom] >= c for atom, c in need.items())


def factorization_fingerprint(e: MonoidElement) -> tuple[tuple[int, ...], ...]:
    """Atoms of ``e`` sorted by length, then lexicographically."""
    if e.is_identity:
        return ()
    return tuple(sorted(decompose(e).atoms, key=lambda a: (len(a), a)))
