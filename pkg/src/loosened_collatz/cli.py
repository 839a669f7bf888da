"""Command-line front end: ``loosened-collatz <subcommand> ...``.

Exit codes: 0 success / no counterexample, 1 usage or input error,
2 I/O error, 3 counterexample found (conjecture commands only).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from . import geometry
from .lcf import (
    canonical_form,
    format_tuple,
    is_satisfying,
    parse_tuple,
    rotate,
    rotation_orbit,
)
from .monoid import (
    MembershipError,
    concat,
    decompose,
    factorization_fingerprint,
    member,
)
from .search import (
    DEFAULT_PROBE_G_MAX,
    CheckpointError,
    ProbeFailure,
    SearchConfig,
    check_conjecture2,
    check_coverage,
    enumerate_satisfying,
    method1_trivial,
    run_search,
)
from .walk import DEFAULT_STEP_CAP, WalkFailure, fixed_point, oracle_satisfies, walk_tuple

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_COUNTEREXAMPLE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _tuple_arg(text: str) -> tuple[int, ...]:
    try:
        return parse_tuple(text, allow_empty=False)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _paren(t) -> str:
    return f"({format_tuple(t)})"


def _emit(obj) -> None:
    print(json.dumps(obj))


# -- subcommands -------------------------------------------------------------

def cmd_eval(args) -> int:
    res = is_satisfying(args.tuple)
    if args.format == "json":
        _emit({"tuple": list(args.tuple), **res.to_json()})
    elif res.satisfying:
        print(f"N = {res.raw.numerator}, D = {res.raw.denominator}")
        print(f"satisfying, value {res.value}")
    else:
        print(f"N = {res.raw.numerator}, D = {res.raw.denominator}")
        print(f"not satisfying (value {res.raw.as_fraction()})")
    return EXIT_OK


def cmd_verify(args) -> int:
    res = oracle_satisfies(args.tuple)
    if res.satisfying:
        walk = walk_tuple(args.tuple, res.value)
        if args.format == "json":
            _emit({"tuple": list(args.tuple), "satisfying": True, "walk": walk.to_json()})
        else:
            print(walk.arrows())
        return EXIT_OK
    x = fixed_point(args.tuple)
    reason = f"fixed point {x} is not a positive integer"
    detail = None
    if x >= 1:
        # show where the walk from the nearest integer start breaks
        try:
            walk_tuple(args.tuple, int(x))
        except WalkFailure as exc:
            detail = {"start": str(int(x)), "step": exc.step, "value": str(exc.value), "message": str(exc)}
    if args.format == "json":
        _emit({"tuple": list(args.tuple), "satisfying": False, "reason": reason, "walk_failure": detail})
    else:
        print(f"{_paren(args.tuple)} does not close: {reason}")
        if detail:
            print(f"walk from {detail['start']}: {detail['message']}")
    return EXIT_OK


def cmd_rotate(args) -> int:
    out = rotation_orbit(args.tuple) if args.all else [rotate(args.tuple, args.k)]
    for t in out:
        print(json.dumps(list(t)) if args.format == "json" else format_tuple(t))
    return EXIT_OK


def cmd_canon(args) -> int:
    c = canonical_form(args.tuple)
    print(json.dumps(list(c)) if args.format == "json" else format_tuple(c))
    return EXIT_OK


def _element(t):
    res = is_satisfying(t)
    if not res.satisfying:
        raise UsageError(f"{_paren(t)} does not satisfy the LCF (value {res.raw.as_fraction()})")
    return member(t, res.value)


def cmd_decompose(args) -> int:
    e = _element(args.tuple)
    dec = decompose(e)
    fp = factorization_fingerprint(e)
    if args.format == "json":
        _emit(dec.to_json() | {"fingerprint": [list(a) for a in fp]})
    else:
        print(f"k = {e.anchor}")
        print("atoms: " + " · ".join(_paren(a) for a in dec.atoms))
        print("fingerprint: {" + ", ".join(_paren(a) for a in fp) + "}")
    return EXIT_OK


def cmd_concat(args) -> int:
    a, b = _element(args.a), _element(args.b)
    if a.anchor != b.anchor:
        raise UsageError(f"{_paren(args.a)} is in S_{a.anchor} but {_paren(args.b)} is in S_{b.anchor}")
    c = concat(a, b)
    if args.format == "json":
        _emit({"k": str(c.anchor), "tuple": list(c.tuple)})
    else:
        print(f"{format_tuple(c.tuple)}  (k = {c.anchor})")
    return EXIT_OK


def _config(args, **extra) -> SearchConfig:
    try:
        return SearchConfig(
            n_min=args.n_min, n_max=args.n_max, sum_max=args.sum_max,
            k_filter=args.k, workers=args.workers, **extra,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_search(args) -> int:
    t0 = time.perf_counter()
    if args.out is None:
        if args.checkpoint or args.resume:
            raise UsageError("--checkpoint/--resume need --out")
        cfg = _config(args, block_size=args.block_size)
        count = 0
        for rec in enumerate_satisfying(cfg):
            sys.stdout.write(rec.to_line())
            count += 1
        if not args.quiet:
            print(f"{count} satisfying tuples for n in [{cfg.n_min}, {cfg.n_max}], sum <= {cfg.sum_max}",
                  file=sys.stderr)
        return EXIT_OK
    cfg = _config(args, output_path=args.out, checkpoint_path=args.checkpoint, block_size=args.block_size)
    summary = run_search(cfg, resume_from_checkpoint=args.resume)
    if args.format == "json":
        _emit({
            "bounds": cfg.bounds(),
            "records": summary.records,
            "non_trivial": [r.to_json() for r in summary.non_trivial],
            "output": args.out,
        })
    elif not args.quiet:
        print(
            f"Searched n in [{cfg.n_min}, {cfg.n_max}] with entry sum <= {cfg.sum_max}"
            + (f", value = {cfg.k_filter}" if cfg.k_filter else "")
            + f": {summary.records} satisfying tuples written to {args.out}, "
            f"{len(summary.non_trivial)} non-trivial. ({time.perf_counter() - t0:.2f}s)"
        )
        for r in summary.non_trivial:
            print(f"  NON-TRIVIAL: {_paren(r.tuple)} value {r.value}")
    return EXIT_OK


def cmd_trivial(args) -> int:
    try:
        rec = method1_trivial(args.start, args.g_iters, args.step_cap)
    except ProbeFailure as exc:
        print(f"method 1 failed: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format in ("json", "jsonl"):
        sys.stdout.write(rec.to_line())
    else:
        print(f"{format_tuple(rec.tuple)}  (value {rec.value}, atoms "
              + " · ".join(_paren(a) for a in rec.atoms) + ")")
    return EXIT_OK


def cmd_coverage(args) -> int:
    cfg = _config(args)
    report = check_coverage(args.limit, cfg, args.probe_g_max)
    if args.format == "json":
        _emit(report.to_json() | {"bounds": cfg.bounds(), "probe_g_max": args.probe_g_max})
    else:
        targets = sum(1 for v in range(1, args.limit + 1) if v % 3)
        print(
            f"{len(report.covered)} of {targets} integers <= {args.limit} not divisible by 3 lie on a "
            f"discovered cycle (search n in [{cfg.n_min}, {cfg.n_max}], sum <= {cfg.sum_max}; "
            f"probes up to {args.probe_g_max} climbs)."
        )
        if report.uncovered:
            print("unknown (no cycle found, not a counterexample): "
                  + ", ".join(map(str, report.uncovered)))
        if not args.quiet:
            for v, t in sorted(report.sources.items()):
                print(f"  {v}: {_paren(t)}")
    return EXIT_OK


def cmd_conjecture2(args) -> int:
    cfg = _config(args)
    report = check_conjecture2(cfg)
    if args.format == "json":
        _emit(report.to_json())
    else:
        print(
            f"Checked {report.satisfying} satisfying tuples with n in [{cfg.n_min}, {cfg.n_max}], "
            f"sum <= {cfg.sum_max}: {len(report.counterexamples)} counterexamples "
            f"(every other tuple is all 2s or contains a 0)."
        )
        for r in report.counterexamples:
            print(f"  COUNTEREXAMPLE: {_paren(r.tuple)} value {r.value}")
    return EXIT_OK if report.holds else EXIT_COUNTEREXAMPLE


def cmd_geometry(args) -> int:
    p = geometry.orbit_polygon(args.tuple)
    if args.format == "csv":
        text = geometry.to_csv(p)
    elif args.format == "json":
        text = json.dumps(geometry.to_json(p)) + "\n"
    else:
        c = geometry.diagonal_centroid(p)
        text = (
            f"{p.n} vertices: " + ", ".join(_paren(v) for v in p.vertices) + "\n"
            f"squared edge length {p.squared_lengths[0]} "
            f"({'all equal' if geometry.equal_edge_check(p) else 'NOT all equal'})\n"
            f"centroid ({', '.join(str(x) for x in c)})\n"
        )
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.format == "csv" and not args.quiet:
        print(f"{p.n} vertices, squared edge length {p.squared_lengths[0]}", file=sys.stderr)
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def _add_bounds(p, n_max=4, sum_max=10):
    p.add_argument("--n-min", type=_positive, default=1)
    p.add_argument("--n-max", type=_positive, default=n_max)
    p.add_argument("--sum-max", type=int, default=sum_max)
    p.add_argument("--k", type=_positive, default=None, help="keep only tuples with this value")
    p.add_argument("--workers", type=_positive, default=1)


def build_parser() -> argparse.ArgumentParser:
    def global_flags(p, default, quiet_default):
        p.add_argument("--format", choices=["human", "json", "jsonl", "csv"], default=default)
        p.add_argument("--quiet", action="store_true", default=quiet_default)

    # accepted before or after the subcommand; the subcommand copy must not
    # clobber a value given before it
    common = argparse.ArgumentParser(add_help=False)
    global_flags(common, argparse.SUPPRESS, argparse.SUPPRESS)
    parser = _Parser(prog="loosened-collatz", description=__doc__.splitlines()[0])
    global_flags(parser, "human", False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help):
        p = sub.add_parser(name, help=help, parents=[common])
        p.set_defaults(func=func)
        return p

    p = add("eval", cmd_eval, "evaluate the LCF on a tuple")
    p.add_argument("tuple", type=_tuple_arg)
    p = add("verify", cmd_verify, "walk the circuit of a tuple")
    p.add_argument("tuple", type=_tuple_arg)
    p = add("rotate", cmd_rotate, "rotate a tuple left")
    p.add_argument("tuple", type=_tuple_arg)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--all", action="store_true", help="print the whole rotation orbit")
    p = add("canon", cmd_canon, "least rotation of a tuple")
    p.add_argument("tuple", type=_tuple_arg)
    p = add("decompose", cmd_decompose, "split a satisfying tuple into atoms")
    p.add_argument("tuple", type=_tuple_arg)
    p = add("concat", cmd_concat, "concatenate two tuples of the same value")
    p.add_argument("a", type=_tuple_arg)
    p.add_argument("b", type=_tuple_arg)

    p = add("search", cmd_search, "enumerate satisfying tuples")
    _add_bounds(p)
    p.add_argument("--out", default=None, help="JSONL output (stdout if omitted)")
    p.add_argument("--checkpoint", default=None)
    p.add_argument("--resume", action="store_true")
    p.add_argument("--block-size", type=_positive, default=2048)

    p = add("trivial", cmd_trivial, "method 1 from 1, 2, 8 or 16")
    p.add_argument("--start", type=int, choices=[1, 2, 8, 16], required=True)
    p.add_argument("--g-iters", type=_positive, required=True)
    p.add_argument("--step-cap", type=_positive, default=DEFAULT_STEP_CAP)

    p = add("coverage", cmd_coverage, "which small integers lie on a discovered cycle")
    _add_bounds(p, n_max=6, sum_max=12)
    p.add_argument("--limit", type=_positive, required=True)
    p.add_argument("--probe-g-max", type=_positive, default=DEFAULT_PROBE_G_MAX)

    p = add("conjecture2", cmd_conjecture2, "check that satisfying tuples contain a 0")
    _add_bounds(p, n_max=5, sum_max=12)

    p = add("geometry", cmd_geometry, "orbit polygon of a tuple")
    p.add_argument("tuple", type=_tuple_arg)
    p.add_argument("--out", default=None)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.ERROR if args.quiet else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, MembershipError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, CheckpointError) as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
