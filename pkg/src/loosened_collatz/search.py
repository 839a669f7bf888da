"""Finding satisfying tuples.

Two routes are supported:

* ``method1_trivial`` climbs ``g`` a few times from one of 1, 2, 8, 16 and then
  follows the ordinary Collatz map back down to the start.
* ``enumerate_satisfying`` walks every weak composition of every entry sum in
  a bounded box, in a fixed order, optionally across worker processes.

``run_search`` persists the second route as JSONL with a resumable checkpoint.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from contextlib import closing
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence

from .lcf import as_tuple, canonical_form, eval_lcf
from .monoid import decompose, member
from .walk import (
    DEFAULT_STEP_CAP,
    TRIVIAL_ANCHORS,
    collatz_step,
    cycle_vertices,
    walk_tuple,
)

log = logging.getLogger(__name__)

__all__ = [
    "SearchConfig",
    "SearchRecord",
    "CoverageReport",
    "Conjecture2Report",
    "ProbeFailure",
    "CheckpointError",
    "composition_count",
    "composition_rank",
    "composition_unrank",
    "compositions",
    "descent_tuple",
    "method1_trivial",
    "make_record",
    "classify",
    "enumerate_satisfying",
    "run_search",
    "resume",
    "check_conjecture2",
    "check_coverage",
]

DEFAULT_BLOCK_SIZE = 2048
DEFAULT_PROBE_G_MAX = 8


class ProbeFailure(RuntimeError):
    """A g-then-descend probe did not come back to its start."""


class CheckpointError(RuntimeError):
    """Checkpoint missing, corrupt, or written for different bounds."""


# -- compositions ------------------------------------------------------------

def composition_count(n: int, s: int) -> int:
    """Number of ways to write ``s`` as an ordered sum of ``n`` non-negative parts."""
    if n == 0:
        return 1 if s == 0 else 0
    return comb(s + n - 1, n - 1)


def composition_rank(c: Sequence[int]) -> int:
    n, s = len(c), sum(c)
    rank = 0
    for i, v in enumerate(c[:-1]):
        rest = n - i - 1
        for smaller in range(v):
            rank += composition_count(rest, s - smaller)
        s -= v
    return rank


def composition_unrank(n: int, s: int, index: int) -> tuple[int, ...]:
    if not 0 <= index < composition_count(n, s):
        raise IndexError(f"composition index {index} out of range for n={n}, s={s}")
    out = []
    for i in range(n - 1):
        rest = n - i - 1
        v = 0
        while True:
            cnt = composition_count(rest, s - v)
            if index < cnt:
                break
            index -= cnt
            v += 1
        out.append(v)
        s -= v
    out.append(s)
    return tuple(out)


def compositions(n: int, s: int, start: int = 0, stop: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """Weak compositions of ``s`` into ``n`` parts, lexicographic, ranks in [start, stop)."""
    total = composition_count(n, s)
    stop = total if stop is None else min(stop, total)
    if start >= stop:
        return
    c = list(composition_unrank(n, s, start))
    for _ in range(stop - start):
        yield tuple(c)
        # successor: bump the slot left of the rightmost nonzero tail entry
        j = n - 1
        while j > 0 and c[j] == 0:
            j -= 1
        if j == 0:
            return
        tail = c[j]
        c[j] = 0
        c[j - 1] += 1
        c[n - 1] = tail - 1


# -- records -----------------------------------------------------------------

@dataclass(frozen=True)
class SearchRecord:
    tuple: tuple[int, ...]
    value: int
    canonical: tuple[int, ...]
    trivial: bool
    atoms: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.tuple)

    @property
    def sum(self) -> int:
        return sum(self.tuple)

    def to_json(self) -> dict:
        return {
            "tuple": list(self.tuple),
            "value": str(self.value),
            "canonical": list(self.canonical),
            "trivial": self.trivial,
            "atoms": [list(a) for a in self.atoms],
            "n": self.n,
            "sum": self.sum,
        }

    def to_line(self) -> str:
        return json.dumps(self.to_json()) + "\n"

    @classmethod
    def from_json(cls, data: dict) -> "SearchRecord":
        return cls(
            tuple(data["tuple"]),
            int(data["value"]),
            tuple(data["canonical"]),
            bool(data["trivial"]),
            tuple(tuple(a) for a in data["atoms"]),
        )


def make_record(t: Sequence[int], value: Optional[int] = None) -> SearchRecord:
    t = as_tuple(t)
    if value is None:
        raw = eval_lcf(t)
        if not raw.is_positive_integer:
            raise ValueError(f"{t} does not satisfy the LCF")
        value = raw.numerator // raw.denominator
    walk = walk_tuple(t, value)
    trivial = not TRIVIAL_ANCHORS.isdisjoint(cycle_vertices(walk))
    atoms = decompose(member(t, value)).atoms
    return SearchRecord(t, value, canonical_form(t), trivial, atoms)


def classify(records: Iterable[SearchRecord | Sequence[int]]) -> Iterator[SearchRecord]:
    """Fill canonical form, triviality and atoms; non-trivial finds are logged loudly."""
    for r in records:
        rec = make_record(r.tuple, r.value) if isinstance(r, SearchRecord) else make_record(r)
        if not rec.trivial:
            log.warning("NON-TRIVIAL satisfying tuple %s (value %d)", rec.tuple, rec.value)
        yield rec


# -- method 1 ----------------------------------------------------------------

def descent_tuple(start: int, g_iters: int, step_cap: int = DEFAULT_STEP_CAP) -> tuple[int, ...]:
    """Tuple of the circuit: ``g`` ``g_iters`` times, then Collatz steps back to ``start``.

    Raises ``ProbeFailure`` if the step cap is hit or the trajectory settles
    into the 1, 4, 2 loop without meeting ``start``.
    """
    if start < 1 or g_iters < 1:
        raise ValueError("start and g_iters must be positive")
    entries = [0] * g_iters
    v = start
    for _ in range(g_iters):
        v = 3 * v + 1
    steps = g_iters
    while v != start:
        if steps >= step_cap:
            raise ProbeFailure(f"no return to {start} within {step_cap} steps")
        if v == 1 and start not in (1, 2, 4):
            raise ProbeFailure(f"trajectory from g^{g_iters}({start}) reached 1 without meeting {start}")
        nxt = collatz_step(v)
        if v % 2:
            entries.append(0)
        else:
            entries[-1] += 1
        v = nxt
        steps += 1
    return tuple(entries)


def method1_trivial(start: int, g_iters: int, step_cap: int = DEFAULT_STEP_CAP) -> SearchRecord:
    if start not in TRIVIAL_ANCHORS:
        raise ValueError(f"method 1 starts from 1, 2, 8 or 16, got {start}")
    t = descent_tuple(start, g_iters, step_cap)
    rec = make_record(t)
    assert rec.value == start
    return rec


# -- systematic enumeration --------------------------------------------------

@dataclass(frozen=True)
class SearchConfig:
    n_min: int = 1
    n_max: int = 4
    sum_max: int = 10
    k_filter: Optional[int] = None
    workers: int = 1
    checkpoint_path: Optional[str] = None
    output_path: Optional[str] = None
    block_size: int = DEFAULT_BLOCK_SIZE

    def __post_init__(self):
        if not 1 <= self.n_min <= self.n_max:
            raise ValueError(f"need 1 <= n_min <= n_max, got {self.n_min}, {self.n_max}")
        if self.sum_max < 0:
            raise ValueError("sum_max must be non-negative")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")
        if self.block_size < 1:
            raise ValueError("block_size must be at least 1")
        if self.k_filter is not None and self.k_filter < 1:
            raise ValueError("k_filter must be a positive integer")

    def bounds(self) -> dict:
        return {
            "n_min": self.n_min,
            "n_max": self.n_max,
            "sum_max": self.sum_max,
            "k_filter": None if self.k_filter is None else str(self.k_filter),
        }

    def config_hash(self) -> str:
        blob = json.dumps(self.bounds(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()


Cursor = tuple[int, int, int]  # (n, s, composition_index)


def _units(cfg: SearchConfig, cursor: Cursor = (0, 0, 0)) -> Iterator[tuple[int, int, int, int]]:
    """Work blocks ``(n, s, lo, hi)`` at or after ``cursor`` in enumeration order."""
    for n in range(cfg.n_min, cfg.n_max + 1):
        three_n = 3**n
        for s in range(cfg.sum_max + 1):
            # denominator 2^s - 3^n must be positive
            if 1 << s <= three_n:
                continue
            total = composition_count(n, s)
            for lo in range(0, total, cfg.block_size):
                hi = min(lo + cfg.block_size, total)
                if (n, s, hi) <= cursor:
                    continue
                yield n, s, max(lo, cursor[2]) if (n, s) == cursor[:2] else lo, hi


def _scan_block(args: tuple[int, int, int, int, Optional[int]]) -> list[SearchRecord]:
    n, s, lo, hi, k_filter = args
    den = (1 << s) - 3**n
    out = []
    for c in compositions(n, s, lo, hi):
        num = 0
        prefix = 0
        for y in c:
            num = 3 * num + (1 << prefix)
            prefix += y
        if num % den:
            continue
        value = num // den
        if k_filter is not None and value != k_filter:
            continue
        out.append(make_record(c, value))
    return out


def _blocks(cfg: SearchConfig, cursor: Cursor = (0, 0, 0)) -> Iterator[tuple[tuple[int, int, int, int], list[SearchRecord]]]:
    units = list(_units(cfg, cursor))
    jobs = [u + (cfg.k_filter,) for u in units]
    if cfg.workers == 1:
        for u, job in zip(units, jobs):
            yield u, _scan_block(job)
        return
    window = 4 * cfg.workers
    pending: deque = deque()
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        try:
            for u, job in zip(units, jobs):
                pending.append((u, pool.submit(_scan_block, job)))
                if len(pending) >= window:
                    u0, fut = pending.popleft()
                    yield u0, fut.result()
            # drain in submission order, which is the global enumeration order
            while pending:
                u0, fut = pending.popleft()
                yield u0, fut.result()
        finally:
            for _u, fut in pending:
                fut.cancel()


def enumerate_satisfying(cfg: SearchConfig) -> Iterator[SearchRecord]:
    for _unit, records in _blocks(cfg):
        yield from records


def _record_key(rec: SearchRecord) -> Cursor:
    return rec.n, rec.sum, composition_rank(rec.tuple)


def _write_checkpoint(path: Path, cfg: SearchConfig, cursor: Cursor) -> None:
    n, s, idx = cursor
    data = {
        "config_hash": cfg.config_hash(),
        "cursor": {"n": n, "s": s, "composition_index": str(idx)},
        "config": cfg.bounds(),
    }
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(json.dumps(data, indent=1) + "\n")
    os.replace(tmp, path)


def resume(checkpoint_path, cfg: Optional[SearchConfig] = None) -> tuple[SearchConfig, Cursor]:
    """Load a checkpoint, returning the search bounds and the next cursor.

    When ``cfg`` is given, its bounds must match the checkpoint's; its
    worker count and paths are kept.
    """
    path = Path(checkpoint_path)
    try:
        data = json.loads(path.read_text())
        n = int(data["cursor"]["n"])
        s = int(data["cursor"]["s"])
        idx = int(data["cursor"]["composition_index"])
        digest = data["config_hash"]
    except FileNotFoundError:
        raise CheckpointError(f"checkpoint {path} does not exist") from None
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise CheckpointError(f"corrupt checkpoint {path}: {exc}") from None
    if cfg is None:
        try:
            b = data["config"]
            k = b.get("k_filter")
            cfg = SearchConfig(
                n_min=int(b["n_min"]), n_max=int(b["n_max"]), sum_max=int(b["sum_max"]),
                k_filter=None if k is None else int(k),
                checkpoint_path=str(path),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise CheckpointError(f"corrupt checkpoint {path}: {exc}") from None
    if cfg.config_hash() != digest:
        raise CheckpointError(f"checkpoint {path} was written for different search bounds")
    return cfg, (n, s, idx)


@dataclass
class SearchSummary:
    records: int = 0
    non_trivial: list = field(default_factory=list)
    blocks: int = 0
    finished: bool = False
    cursor: Cursor = (0, 0, 0)


def _truncate_output(path: Path, cursor: Cursor) -> int:
    """Drop records at or beyond ``cursor`` (written after the last checkpoint)."""
    kept = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            if not line.endswith("\n"):
                break
            rec = SearchRecord.from_json(json.loads(line))
            if _record_key(rec) >= cursor:
                break
            kept.append(line)
    with open(path, "w", encoding="utf-8") as fh:
        fh.writelines(kept)
    return len(kept)


def run_search(cfg: SearchConfig, resume_from_checkpoint: bool = False,
               max_blocks: Optional[int] = None) -> SearchSummary:
    """Enumerate into ``cfg.output_path`` (JSONL) with an optional checkpoint.

    ``max_blocks`` stops after that many work blocks, leaving a checkpoint
    that ``resume_from_checkpoint=True`` picks up from.
    """
    if cfg.output_path is None:
        raise ValueError("run_search needs an output path")
    out_path = Path(cfg.output_path)
    ck_path = Path(cfg.checkpoint_path) if cfg.checkpoint_path else None
    summary = SearchSummary()
    cursor: Cursor = (0, 0, 0)
    if resume_from_checkpoint:
        if ck_path is None:
            raise ValueError("resuming needs a checkpoint path")
        _, cursor = resume(ck_path, cfg)
        summary.records = _truncate_output(out_path, cursor) if out_path.exists() else 0
        mode = "a"
    else:
        mode = "w"
    end: Cursor = (cfg.n_max + 1, 0, 0)
    with open(out_path, mode, encoding="utf-8") as out:
        if ck_path is not None and mode == "w":
            _write_checkpoint(ck_path, cfg, cursor)
        with closing(_blocks(cfg, cursor)) as blocks:
            for (n, s, _lo, hi), records in blocks:
                if max_blocks is not None and summary.blocks >= max_blocks:
                    break
                for rec in records:
                    out.write(rec.to_line())
                    if not rec.trivial:
                        summary.non_trivial.append(rec)
                out.flush()
                summary.records += len(records)
                summary.blocks += 1
                cursor = (n, s, hi)
                if ck_path is not None:
                    _write_checkpoint(ck_path, cfg, cursor)
            else:
                cursor = end
                summary.finished = True
                if ck_path is not None:
                    _write_checkpoint(ck_path, cfg, cursor)
    summary.cursor = cursor
    return summary


# -- conjecture checks -------------------------------------------------------

@dataclass
class Conjecture2Report:
    bounds: dict
    satisfying: int
    counterexamples: list

    @property
    def holds(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> dict:
        return {
            "bounds": self.bounds,
            "satisfying": self.satisfying,
            "counterexamples": [r.to_json() for r in self.counterexamples],
            "holds": self.holds,
        }


def violates_conjecture2(t: Sequence[int]) -> bool:
    """A satisfying tuple that is neither all 2s nor contains a 0."""
    return 0 not in t and any(y != 2 for y in t)


def check_conjecture2(cfg: SearchConfig) -> Conjecture2Report:
    count = 0
    bad = []
    for rec in enumerate_satisfying(cfg):
        count += 1
        if violates_conjecture2(rec.tuple):
            log.warning("Conjecture 2 counterexample: %s", rec.tuple)
            bad.append(rec)
    return Conjecture2Report(cfg.bounds(), count, bad)


@dataclass
class CoverageReport:
    limit: int
    covered: set[int]
    uncovered: list[int]
    sources: dict[int, tuple[int, ...]]

    def to_json(self) -> dict:
        return {
            "limit": self.limit,
            "covered": sorted(self.covered),
            "uncovered": self.uncovered,
            "sources": {str(v): list(t) for v, t in sorted(self.sources.items())},
        }


def check_coverage(limit: int, cfg: SearchConfig, probe_g_max: int = DEFAULT_PROBE_G_MAX,
                   step_cap: int = DEFAULT_STEP_CAP) -> CoverageReport:
    """Which ``v <= limit`` with ``v % 3 != 0`` lie on some discovered cycle.

    Vertices come from every tuple enumerated under ``cfg``, from method 1 at
    each of 1, 2, 8, 16 with up to ``probe_g_max`` climbs, and finally from
    the same climb-then-descend probe started at each still-uncovered vertex.
    Failed probes leave the vertex uncovered (unknown, not a counterexample).
    """
    if limit < 1:
        raise ValueError("limit must be positive")
    sources: dict[int, tuple[int, ...]] = {}

    def absorb(t: tuple[int, ...], value: int) -> None:
        canon = canonical_form(t)
        for v in cycle_vertices(walk_tuple(t, value)):
            if v <= limit and v not in sources:
                sources[v] = canon

    for rec in enumerate_satisfying(cfg):
        absorb(rec.tuple, rec.value)
    for start in sorted(TRIVIAL_ANCHORS):
        for m in range(1, probe_g_max + 1):
            try:
                absorb(descent_tuple(start, m, step_cap), start)
            except ProbeFailure:
                pass
    for v in range(1, limit + 1):
        if v % 3 == 0 or v in sources:
            continue
        for m in range(1, probe_g_max + 1):
            try:
                absorb(descent_tuple(v, m, step_cap), v)
                break
            except ProbeFailure:
                continue
    assert all(v % 3 for v in sources), "a multiple of 3 landed on a cycle"
    covered = set(sources)
    uncovered = [v for v in range(1, limit + 1) if v % 3 and v not in covered]
    return CoverageReport(limit, covered, uncovered, sources)
