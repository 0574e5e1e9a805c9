"""Command-line front end: ``ccsklab <command> ...`` (or ``python -m ccsklab``).

Exit status is 0 when the command succeeds and reports no violation, 1 when
it reports a violation or a negative verdict that is the point of the
command (non-equivalent traces, failed suite), 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import tracefile
from .causality import concurrency_witness
from .diamonds import MissingDiamond, NotConcurrent, commute
from .equivalence import (
    NoParabolicForm,
    canonical_form,
    causally_equivalent,
    check_causal_consistency,
    parabolic_normal_form,
)
from .lts import (
    NonConfluentOrigin,
    NoOrigin,
    Trace,
    backward_steps,
    forward_steps,
    origin,
)
from .quickcheck import SUITES, default_marking, run_suite
from .syntax import (
    KeyMisuse,
    ParseError,
    is_standard,
    keys,
    parse,
    pretty,
    shape_problems,
)


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    print(json.dumps(payload, indent=2) if args.json else text)


def _marking(args) -> bool:
    return not args.no_marking


def _process(text: str):
    return parse(text)


def _trace(args, path: str) -> Trace:
    return tracefile.load(path, _marking(args))


def _write_trace(args, trace: Trace) -> None:
    text = tracefile.json_dumps(trace) if args.json else tracefile.dumps(trace).rstrip("\n")
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# --------------------------------------------------------------------------
# Commands


def cmd_parse(args) -> int:
    p = _process(args.process)
    problems = shape_problems(p)
    payload = {
        "process": pretty(p),
        "standard": is_standard(p),
        "keys": sorted(str(k) for k in keys(p).elements()),
        "problems": problems,
    }
    lines = [pretty(p)] + [f"warning: {msg}" for msg in problems]
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_steps(args) -> int:
    p = _process(args.process)
    marking = _marking(args)
    out = []
    if args.direction in ("forward", "both"):
        out += forward_steps(p, args.key, marking)
    if args.direction in ("backward", "both"):
        out += backward_steps(p, marking)
    payload = {"source": pretty(p), "steps": [tracefile.transition_to_json(t) for t in out]}
    _emit(args, payload, "\n".join(tracefile.format_step(t) for t in out))
    return 0


def cmd_walk(args) -> int:
    names = tracefile.parse_key_names(args.keys or "")
    trace = tracefile.walk(_process(args.process), args.selectors, names, _marking(args))
    _write_trace(args, trace)
    return 0


def cmd_concurrent(args) -> int:
    trace = _trace(args, args.trace)
    for i in (args.i, args.j):
        if not 1 <= i <= len(trace):
            raise UsageError(f"step {i} is outside a trace of length {len(trace)}")
    witness = concurrency_witness(trace, args.i, args.j)
    payload = {
        "i": args.i,
        "j": args.j,
        "labels": [str(trace[args.i - 1].label), str(trace[args.j - 1].label)],
        "concurrent": witness is None,
        "witness": [{"rule": r, "lhs": a, "rhs": b} for r, a, b in witness or ()],
    }
    print(json.dumps(payload, indent=2))
    return 0


def cmd_swap(args) -> int:
    trace = _trace(args, args.trace)
    i = args.i
    if not 1 <= i < len(trace):
        raise UsageError(f"cannot swap steps {i} and {i + 1} of a trace of length {len(trace)}")
    u, v = commute(trace[i - 1], trace[i], _marking(args))
    steps = trace.steps[: i - 1] + (u, v) + trace.steps[i + 1 :]
    _write_trace(args, Trace(trace.source, steps))
    return 0


def cmd_normalize(args) -> int:
    trace = _trace(args, args.trace)
    marking = _marking(args)
    out = parabolic_normal_form(trace, marking) if args.parabolic else canonical_form(trace, marking)
    _write_trace(args, out)
    return 0


def cmd_equiv(args) -> int:
    a, b = _trace(args, args.a), _trace(args, args.b)
    same = causally_equivalent(a, b, _marking(args), args.insertions)
    verdict = "equivalent" if same else "not equivalent within bound"
    _emit(args, {"equivalent": same, "insertions": args.insertions}, verdict)
    return 0 if same else 1


def cmd_consistency(args) -> int:
    p = _process(args.process)
    report = check_causal_consistency(p, args.depth, _marking(args))
    violations = [
        {"left": tracefile.trace_to_json(x), "right": tracefile.trace_to_json(y)} for x, y in report.violations
    ]
    lines = [
        (
            f"{pretty(p)}: {report.traces} traces of length <= {args.depth}, "
            f"{report.cofinal_groups} targets, {len(report.violations)} violation(s)"
        )
    ]
    for x, y in report.violations:
        lines.append("violation:")
        lines.append("  " + tracefile.dumps(x).rstrip("\n").replace("\n", "\n  "))
        lines.append("  vs")
        lines.append("  " + tracefile.dumps(y).rstrip("\n").replace("\n", "\n  "))
    payload = {
        "process": pretty(p),
        "depth": args.depth,
        "marking": report.marking,
        "traces": report.traces,
        "violations": violations,
    }
    _emit(args, payload, "\n".join(lines))
    return 0 if report.ok else 1


def cmd_origin(args) -> int:
    p = _process(args.process)
    try:
        o = origin(p, _marking(args))
    except NonConfluentOrigin as exc:
        _emit(args, {"origins": [pretty(x) for x in exc.origins], "confluent": False}, f"non-confluent: {exc}")
        return 1
    except NoOrigin as exc:
        _emit(args, {"stuck": pretty(exc.stuck)}, str(exc))
        return 1
    _emit(args, {"origin": pretty(o), "confluent": True}, pretty(o))
    return 0


def cmd_quickcheck(args) -> int:
    marking = default_marking(args.suite) if args.marking is None else args.marking
    result = run_suite(
        args.suite,
        seed=args.seed,
        count=args.count,
        size=args.size,
        walk=args.walk,
        depth=args.depth,
        marking=marking,
        stop_at_first=not args.all,
    )
    status = "pass" if result.ok else "FAIL"
    head = (
        f"{args.suite}: {status} ({args.count} processes, seed {args.seed}, "
        f"{'marked' if marking else 'unmarked'} keys, {result.checks} checks)"
    )
    lines = [head] + [f"counterexample (replay with --seed {f.seed} --count 1):\n  {f}" for f in result.failures[:5]]
    payload = {
        "suite": args.suite,
        "ok": result.ok,
        "seed": args.seed,
        "count": args.count,
        "marking": marking,
        "checks": result.checks,
        "failures": [{"seed": f.seed, "process": pretty(f.process), "detail": f.detail} for f in result.failures],
    }
    _emit(args, payload, "\n".join(lines))
    return 0 if result.ok else 1


# --------------------------------------------------------------------------
# Argument parsing


def _seed_default() -> int:
    try:
        return int(os.environ.get("CCSKLAB_SEED", "0"))
    except ValueError:
        return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--no-marking", action="store_true", help="replication without marked keys")

    ap = argparse.ArgumentParser(prog="ccsklab", description="Workbench for CCSK with replication.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("parse", parents=[common], help="parse and pretty-print a process")
    s.add_argument("process")
    s.set_defaults(func=cmd_parse)

    s = sub.add_parser("steps", parents=[common], help="list the transitions of a process")
    s.add_argument("process")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--forward", dest="direction", action="store_const", const="forward")
    g.add_argument("--backward", dest="direction", action="store_const", const="backward")
    g.add_argument("--both", dest="direction", action="store_const", const="both")
    s.add_argument("--key", type=int, default=None, help="key for forward steps (default: smallest fresh)")
    s.set_defaults(func=cmd_steps, direction="forward")

    s = sub.add_parser("walk", parents=[common], help="build a trace from step selectors")
    s.add_argument("process")
    s.add_argument("selectors", nargs="*", help='e.g. "fwd |L a[m]" or "bwd |R c[2]"')
    s.add_argument("--keys", help="symbolic key names, e.g. m=0,n=1")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_walk)

    s = sub.add_parser("concurrent", parents=[common], help="are steps i and j of a trace concurrent")
    s.add_argument("trace")
    s.add_argument("i", type=int)
    s.add_argument("j", type=int)
    s.set_defaults(func=cmd_concurrent)

    s = sub.add_parser("swap", parents=[common], help="commute steps i and i+1 of a trace")
    s.add_argument("trace")
    s.add_argument("i", type=int)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_swap)

    s = sub.add_parser("normalize", parents=[common], help="canonical (or parabolic) form of a trace")
    s.add_argument("trace")
    s.add_argument("--parabolic", action="store_true", help="stop after the parabolic normal form")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("equiv", parents=[common], help="decide causal equivalence of two traces")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--insertions", type=int, default=1, help="bound on inserted step/undo pairs")
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("consistency", parents=[common], help="check all coinitial cofinal traces")
    s.add_argument("process")
    s.add_argument("--depth", type=int, default=4)
    s.set_defaults(func=cmd_consistency)

    s = sub.add_parser("origin", parents=[common], help="backtrack to the standard origin")
    s.add_argument("process")
    s.set_defaults(func=cmd_origin)

    s = sub.add_parser("quickcheck", parents=[common], help="run a randomised property suite")
    s.add_argument("suite", choices=sorted(SUITES))
    s.add_argument("--seed", type=int, default=_seed_default())
    s.add_argument("--count", type=int, default=100)
    s.add_argument("--size", type=int, default=8)
    s.add_argument("--walk", type=int, default=6, help="length bound of the walk producing each process")
    s.add_argument("--depth", type=int, default=4, help="trace length for the consistency suite")
    s.add_argument("--marking", dest="marking", action="store_true", default=None, help="force marked keys")
    s.add_argument("--all", action="store_true", help="collect every counterexample")
    s.set_defaults(func=cmd_quickcheck)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args, extra = ap.parse_known_args(argv)
    if extra:
        # selectors may follow options such as --keys
        if args.command != "walk" or any(x.startswith("-") for x in extra):
            ap.error("unrecognized arguments: " + " ".join(extra))
        args.selectors += extra
    if args.command == "quickcheck" and args.no_marking:
        args.marking = False
    try:
        return args.func(args)
    except NotConcurrent as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ParseError, KeyMisuse, tracefile.TraceFileError, tracefile.SelectorError, UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (MissingDiamond, NoParabolicForm) as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
