"""Command-line front end: count, bounds, tape, verify.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 resource limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import checks
from .bounds import PartitionSpec, entropy_summary, partition_upper_bound
from .enumerator import ResourceLimitExceeded, SearchLimits, count_table
from .formulas import one_on_one_ways
from .geometry import BrickShape
from .tape import Tape, TapeFormatError, decode

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

DESK_NODE_BUDGET = 300_000_000


def _parse_nrange(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    n = int(text)
    return n, n


def _limits(args) -> SearchLimits:
    progress = 10.0 if getattr(args, "tier", "desk") == "extended" else None
    return SearchLimits(max_nodes=args.max_nodes, max_seconds=args.max_seconds,
                        workers=args.workers, progress_seconds=progress)


def _estimate_nodes(shape: BrickShape, n: int) -> int:
    return 25 * one_on_one_ways(shape) ** (n - 1)


def cmd_count(args) -> int:
    shape = BrickShape.parse(args.shape)
    lo, hi = _parse_nrange(args.n)
    if not 1 <= lo <= hi:
        print("invalid --n range", file=sys.stderr)
        return EXIT_USAGE
    budget = args.max_nodes or DESK_NODE_BUDGET
    if args.tier == "desk" and _estimate_nodes(shape, hi) > budget:
        print(f"desk tier refuses this job: estimated {_estimate_nodes(shape, hi):.2e} "
              f"node visits exceed the budget {budget:.2e}; rerun with "
              f"--tier extended (and optionally --max-nodes/--max-seconds)",
              file=sys.stderr)
        return EXIT_RESOURCE
    t0 = time.monotonic()
    try:
        ledgers = count_table(shape, hi, _limits(args))[lo - 1:]
    except ResourceLimitExceeded as exc:
        print(f"resource limit: {exc} (visited {exc.nodes_visited} nodes, "
              f"{exc.tasks_done}/{exc.tasks_total} tasks)", file=sys.stderr)
        return EXIT_RESOURCE
    elapsed = time.monotonic() - t0

    if args.format == "json":
        payload = {
            "meta": {"elapsed_seconds": elapsed, "command": "count"},
            "shape": str(shape),
            "ledgers": [{
                "n": led.n, "total": led.total, "anchored": led.anchored,
                "by_height": {str(m): v for m, v in sorted(led.by_height.items())},
                "node_visits": led.node_visits,
            } for led in ledgers],
        }
        print(json.dumps(payload, sort_keys=True))
    elif args.format == "csv":
        ms = list(range(1, hi + 1))
        print("n," + ",".join(f"m={m}" for m in ms) + ",total,anchored")
        for led in ledgers:
            row = [str(led.by_height.get(m, 0)) for m in ms]
            print(f"{led.n}," + ",".join(row) + f",{led.total},{led.anchored}")
    else:
        print(f"shape {shape}")
        print(f"{'n':>3} {'total':>16} {'anchored':>16}")
        for led in ledgers:
            print(f"{led.n:>3} {led.total:>16} {led.anchored:>16}")
        print()
        ms = list(range(2, hi + 1))
        if ms:
            print("heights " + " ".join(f"{'m=' + str(m):>12}" for m in ms))
            for led in ledgers:
                if led.n < 2:
                    continue
                print(f"n={led.n:<5} " + " ".join(
                    f"{led.by_height.get(m, 0):>12}" for m in ms))
        print(f"[{elapsed:.1f}s, {ledgers[-1].node_visits} node visits]",
              file=sys.stderr)
    return EXIT_OK


def _parse_partition(text: str) -> PartitionSpec:
    try:
        top, reduced = text.split(";")
        return PartitionSpec(tuple(int(v) for v in top.split(",")),
                             tuple(int(v) for v in reduced.split(",")))
    except ValueError as exc:
        raise TapeFormatError(f"cannot parse partition spec: {exc}") from exc


def cmd_bounds(args) -> int:
    shape = BrickShape.parse(args.shape)
    reports = []
    if args.partition:
        try:
            spec = _parse_partition(args.partition)
        except TapeFormatError as exc:
            print(exc, file=sys.stderr)
            return EXIT_USAGE
        reports.append(partition_upper_bound(spec))
        empirical = []
    else:
        c_values = None
        if args.c_values:
            c_values = tuple(int(v) for v in args.c_values.split(","))
        summary = entropy_summary(shape, c_values=c_values)
        reports = list(summary.lower) + list(summary.upper)
        empirical = list(summary.empirical)

    if args.format == "json":
        payload = {
            "meta": {"command": "bounds"},
            "shape": str(shape),
            "bounds": [{
                "kind": r.kind, "value": r.value, "method": r.method,
                "witness": {k: str(v) for k, v in r.witness.items()},
            } for r in reports],
            "empirical": [{"label": e.label, "value": e.value} for e in empirical],
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        for r in reports:
            print(f"{r.kind:>5} {r.value:>10}  {r.method}")
        for e in empirical:
            print(f"  est {e.value:>10.3f}  {e.label}")
    return EXIT_OK


def cmd_tape(args) -> int:
    shape = BrickShape.parse(args.shape)
    try:
        tape = Tape.parse(args.tape, shape, args.n)
    except TapeFormatError as exc:
        print(f"tape parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    outcome = decode(tape)
    if args.format == "json":
        payload = {"meta": {"command": "tape"}, "shape": str(shape), "n": args.n}
        if outcome.ok:
            payload["result"] = "ok"
            payload["placements"] = [
                {"x": p.x, "y": p.y, "z": p.z, "rot": p.rot}
                for p in outcome.config.placements]
        else:
            payload["result"] = "fail"
            payload["failure"] = outcome.failure.value
            payload["position"] = outcome.position
        print(json.dumps(payload, sort_keys=True))
    elif outcome.ok:
        print(f"OK: {len(outcome.config)} bricks")
        for p in outcome.config.placements:
            rot = "rotated" if p.rot else "aligned"
            print(f"  layer {p.z}: ({p.x}, {p.y}) {rot}")
    else:
        print(f"FAIL: {outcome.failure.value} at position {outcome.position}")
    return EXIT_OK


def cmd_verify(args) -> int:
    limits = _limits(args)
    results = checks.run_checks(tier=args.tier, limits=limits)
    failed = [r for r in results if not r.ok]
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        print(f"{status} {r.name} ({r.elapsed:.1f}s) - {r.detail}")
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_OK if not failed else EXIT_VERIFY_FAILED


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="brickcount",
        description="Exact enumeration and growth bounds for stud-brick buildings")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--shape", default="2x4", help="brick shape BxW (default 2x4)")
        p.add_argument("--max-nodes", type=int, default=None)
        p.add_argument("--max-seconds", type=float, default=None)
        p.add_argument("--workers", type=int, default=None,
                       help="worker threads (default: all cores, or "
                            "BRICKCOUNT_WORKERS)")
        p.add_argument("--tier", choices=("desk", "extended"), default="desk")
        p.add_argument("--format", choices=("table", "csv", "json"),
                       default="table")

    p_count = sub.add_parser("count", help="orbit totals, height table, anchored counts")
    common(p_count)
    p_count.add_argument("--n", required=True, help="brick count or range A..B")
    p_count.set_defaults(fn=cmd_count)

    p_bounds = sub.add_parser("bounds", help="growth-constant bound ladder")
    common(p_bounds)
    p_bounds.add_argument("--partition",
                          help="custom partition tuples 'a1,..,a8;b1,..,b8'")
    p_bounds.add_argument("--c-values",
                          help="comma-separated bottleneck-free counts c_1..c_k")
    p_bounds.set_defaults(fn=cmd_bounds)

    p_tape = sub.add_parser("tape", help="decode an instruction tape")
    common(p_tape)
    p_tape.add_argument("--n", type=int, required=True, help="target brick count")
    p_tape.add_argument("tape", help="comma-separated values, e.g. '0,5,0,...'")
    p_tape.set_defaults(fn=cmd_tape)

    p_verify = sub.add_parser("verify", help="run the golden/property check suite")
    common(p_verify)
    p_verify.set_defaults(fn=cmd_verify)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ResourceLimitExceeded as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
