"""
=======================
Searching for cycles
=======================

Method 1 climbs from 1, 2, 8 or 16 and lets the ordinary Collatz map bring
it home.  The systematic search enumerates every tuple in a box.
"""

import tempfile
from pathlib import Path

from loosened_collatz import (
    SearchConfig,
    check_conjecture2,
    check_coverage,
    enumerate_satisfying,
    method1_trivial,
    run_search,
)

for start in (1, 2, 8, 16):
    for m in (1, 2):
        rec = method1_trivial(start, m)
        print(f"start={start:<2} climbs={m}  {rec.tuple}")

###############################################################################
# Systematic search
# -----------------

cfg = SearchConfig(n_max=5, sum_max=12)
found = list(enumerate_satisfying(cfg))
cycles = {r.canonical for r in found}
print(f"{len(found)} satisfying tuples, {len(cycles)} distinct cycles")
print("non-trivial:", [r.tuple for r in found if not r.trivial])

###############################################################################
# Persisting with a checkpoint
# ----------------------------

with tempfile.TemporaryDirectory() as d:
    cfg = SearchConfig(n_max=5, sum_max=12, output_path=str(Path(d) / "out.jsonl"),
                       checkpoint_path=str(Path(d) / "out.ckpt"), block_size=32)
    run_search(cfg, max_blocks=10)
    summary = run_search(cfg, resume_from_checkpoint=True)
    print(Path(d, "out.jsonl").read_text().splitlines()[0])
    print("finished:", summary.finished)

###############################################################################
# Conjectures at desk scale
# -------------------------

report = check_conjecture2(SearchConfig(n_max=5, sum_max=12))
print("tuples without a 0 (other than all 2s):", report.counterexamples)

cov = check_coverage(40, SearchConfig(n_max=6, sum_max=12), probe_g_max=4)
print("uncovered up to 40:", cov.uncovered)
