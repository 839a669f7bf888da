import itertools
import json

import pytest

from loosened_collatz.lcf import canonical_form, rotate
from loosened_collatz.search import (
    CheckpointError,
    ProbeFailure,
    SearchConfig,
    check_conjecture2,
    check_coverage,
    classify,
    composition_count,
    composition_rank,
    composition_unrank,
    compositions,
    descent_tuple,
    enumerate_satisfying,
    make_record,
    method1_trivial,
    resume,
    run_search,
)
from loosened_collatz.walk import oracle_satisfies

from conftest import brute_universe, naive_satisfying


def weak_compositions(n, s):
    return sorted(c for c in itertools.product(range(s + 1), repeat=n) if sum(c) == s)


@pytest.mark.parametrize("n, s", [(1, 0), (1, 5), (2, 4), (3, 5), (4, 6), (5, 3)])
def test_compositions_lexicographic(n, s):
    expected = weak_compositions(n, s)
    assert list(compositions(n, s)) == expected
    assert composition_count(n, s) == len(expected)
    for i, c in enumerate(expected):
        assert composition_rank(c) == i
        assert composition_unrank(n, s, i) == c
    assert list(compositions(n, s, 2, 5)) == expected[2:5]


def test_method1_examples():
    assert method1_trivial(1, 1).tuple == (2,)
    r = method1_trivial(1, 2)
    assert r.tuple == (0, 0, 3, 4) and r.value == 1
    r = method1_trivial(2, 1)
    assert r.tuple == (0, 1, 1, 2, 3, 3) and r.value == 2


def test_method1_sixteen_reaches_fourteen():
    r = method1_trivial(16, 1)
    assert 14 in {v for v in _walk_vertices(r)}


def _walk_vertices(rec):
    from loosened_collatz.walk import cycle_vertices, walk_tuple
    return cycle_vertices(walk_tuple(rec.tuple, rec.value))


@pytest.mark.parametrize("start", [1, 2, 8, 16])
@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_method1_always_trivial_and_anchored(start, m):
    r = method1_trivial(start, m)
    assert r.value == start
    assert r.trivial
    assert oracle_satisfies(r.tuple).value == start


def test_method1_errors():
    with pytest.raises(ValueError):
        method1_trivial(3, 1)
    with pytest.raises(ProbeFailure):
        method1_trivial(16, 3, step_cap=5)
    with pytest.raises(ProbeFailure):
        descent_tuple(7, 1, step_cap=10_000)  # 7 -> 22 -> 11 -> ... never returns to 7


def test_enumerate_examples():
    got = [r.tuple for r in enumerate_satisfying(SearchConfig(n_min=1, n_max=1, sum_max=4))]
    assert got == [(2,)]
    got = [r.tuple for r in enumerate_satisfying(SearchConfig(n_min=2, n_max=2, sum_max=5))]
    assert got == [(2, 2)]
    got = {r.tuple for r in enumerate_satisfying(SearchConfig(n_min=3, n_max=3, sum_max=5, k_filter=4))}
    assert (0, 3, 2) in got
    full = {r.tuple for r in enumerate_satisfying(SearchConfig(n_min=3, n_max=3, sum_max=5))}
    assert {(0, 3, 2), (3, 2, 0), (2, 0, 3)} <= full


def test_enumeration_exhaustive_against_naive_filter():
    cfg = SearchConfig(n_min=1, n_max=3, sum_max=8)
    got = [r.tuple for r in enumerate_satisfying(cfg)]
    expected = {t for t in brute_universe(3, 8) if naive_satisfying(t)}
    assert set(got) == expected
    assert len(got) == len(expected)
    # enumeration order: n, then sum, then lexicographic
    assert got == sorted(got, key=lambda t: (len(t), sum(t), t))


def test_records_are_consistent():
    for rec in enumerate_satisfying(SearchConfig(n_max=4, sum_max=10)):
        assert oracle_satisfies(rec.tuple).value == rec.value
        assert rec.canonical == canonical_form(rec.tuple)
        assert sum(rec.atoms, ()) == rec.tuple


def test_output_closed_under_rotation():
    got = {r.tuple for r in enumerate_satisfying(SearchConfig(n_max=5, sum_max=12))}
    for t in got:
        for k in range(len(t)):
            assert rotate(t, k) in got


def test_classify():
    recs = list(classify([(0, 3, 2), (2, 2)]))
    assert recs[0].trivial
    assert recs[1].trivial and recs[1].atoms == ((2,), (2,))
    again = list(classify(recs))
    assert again == recs


def test_record_json_schema():
    rec = make_record((0, 3, 2))
    data = json.loads(rec.to_line())
    assert list(data) == ["tuple", "value", "canonical", "trivial", "atoms", "n", "sum"]
    assert data["value"] == "4" and data["n"] == 3 and data["sum"] == 5


def test_search_config_validation():
    for bad in (dict(n_min=0), dict(n_min=3, n_max=2), dict(sum_max=-1), dict(workers=0)):
        with pytest.raises(ValueError):
            SearchConfig(**bad)


def test_conjecture2_small():
    report = check_conjecture2(SearchConfig(n_max=4, sum_max=10))
    assert report.holds and report.satisfying > 0
    tuples = {r.tuple for r in enumerate_satisfying(SearchConfig(n_max=4, sum_max=10))}
    assert (2, 2) in tuples and (0, 3, 2) in tuples


def test_coverage_small():
    r = check_coverage(4, SearchConfig(n_max=1, sum_max=4), probe_g_max=1)
    assert r.covered == {1, 2, 4}
    assert r.sources[4] == (2,)
    r = check_coverage(16, SearchConfig(n_max=6, sum_max=12), probe_g_max=4)
    assert {7, 11, 13, 14} <= r.covered
    assert not any(v % 3 == 0 for v in r.covered)
    targets = {v for v in range(1, 17) if v % 3}
    assert r.covered | set(r.uncovered) == targets
    assert not r.covered & set(r.uncovered)


# -- persistence ------------------------------------------------------------

def _cfg(tmp_path, name, **kw):
    base = dict(n_min=1, n_max=5, sum_max=13, block_size=16)
    base.update(kw)
    return SearchConfig(output_path=str(tmp_path / f"{name}.jsonl"),
                        checkpoint_path=str(tmp_path / f"{name}.ckpt"), **base)


def test_run_search_writes_jsonl(tmp_path):
    cfg = _cfg(tmp_path, "a", n_max=2, sum_max=5)
    summary = run_search(cfg)
    assert summary.finished and summary.records == 2
    lines = (tmp_path / "a.jsonl").read_text().splitlines()
    assert [json.loads(l)["tuple"] for l in lines] == [[2], [2, 2]]
    ck = json.loads((tmp_path / "a.ckpt").read_text())
    assert set(ck) >= {"config_hash", "cursor"}
    assert set(ck["cursor"]) == {"n", "s", "composition_index"}
    assert isinstance(ck["cursor"]["composition_index"], str)


def test_resume_after_interrupt_is_byte_identical(tmp_path):
    full = _cfg(tmp_path, "full")
    run_search(full)
    part = _cfg(tmp_path, "part")
    first = run_search(part, max_blocks=7)
    assert not first.finished
    run_search(part, resume_from_checkpoint=True)
    assert (tmp_path / "part.jsonl").read_bytes() == (tmp_path / "full.jsonl").read_bytes()


def test_resume_discards_records_past_checkpoint(tmp_path):
    full = _cfg(tmp_path, "full")
    run_search(full)
    part = _cfg(tmp_path, "part")
    run_search(part, max_blocks=5)
    # simulate a crash after writing output but before the checkpoint moved
    ck = (tmp_path / "part.ckpt").read_text()
    run_search(part, max_blocks=3, resume_from_checkpoint=True)
    (tmp_path / "part.ckpt").write_text(ck)
    run_search(part, resume_from_checkpoint=True)
    assert (tmp_path / "part.jsonl").read_bytes() == (tmp_path / "full.jsonl").read_bytes()


def test_resume_errors(tmp_path):
    with pytest.raises(CheckpointError):
        resume(tmp_path / "missing.ckpt")
    bad = tmp_path / "bad.ckpt"
    bad.write_text("{not json")
    with pytest.raises(CheckpointError):
        resume(bad)
    cfg = _cfg(tmp_path, "x", n_max=3)
    run_search(cfg, max_blocks=1)
    with pytest.raises(CheckpointError):
        run_search(_cfg(tmp_path, "x", n_max=4), resume_from_checkpoint=True)
    loaded, cursor = resume(tmp_path / "x.ckpt")
    assert loaded.config_hash() == cfg.config_hash()
    assert len(cursor) == 3


def test_worker_count_does_not_change_output(tmp_path):
    run_search(_cfg(tmp_path, "one", workers=1))
    run_search(_cfg(tmp_path, "four", workers=4))
    assert (tmp_path / "one.jsonl").read_bytes() == (tmp_path / "four.jsonl").read_bytes()


def test_block_size_change_across_resume(tmp_path):
    run_search(_cfg(tmp_path, "full"))
    run_search(_cfg(tmp_path, "part", block_size=16), max_blocks=9)
    run_search(_cfg(tmp_path, "part", block_size=7), resume_from_checkpoint=True)
    assert (tmp_path / "part.jsonl").read_bytes() == (tmp_path / "full.jsonl").read_bytes()
