"""Command-line front end.

    ordlp model    file.lp [--depth N] [--format json|text] [--trace]
    ordlp collapse file.lp [--depth N] [--format json|text]
    ordlp sweep    file.lp [--depths A..B] [--format json|text]
    ordlp check    file.lp [--depth N] [--degree-bound K] [--budget B]
    ordlp wfs      file.lp [--depth N] [--format json|text]
    ordlp oracle   [file.lp | --random] [--suite S] [--seed S] [--count N]

Exit codes are a stable contract: 0 success, 1 input error, 2 internal
assertion failure, 3 enumeration budget exceeded, 4 counterexample or
mismatch found.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import (
    BudgetExceededError,
    FixpointInvariantError,
    InputError,
    OrdlpError,
)
from .fixpoint import compute_least_model
from .ground import enumerate_universe, ground_program, herbrand_base
from .interp import (
    collapse,
    interpretation_to_json,
    three_valued_to_json,
)
from .oracle import (
    check_minimal_3v,
    is_normal_rule,
    run_least_model_suite,
    run_minimality_suite,
    run_wfs_differential,
    verify_least,
    wfs_normal,
)
from .semantics import is_model_3v
from .syntax import parse_program, render_atom

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INTERNAL = 2
EXIT_BUDGET = 3
EXIT_COUNTEREXAMPLE = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ordlp",
        description="Least models of formula-based logic programs over "
        "ordinal-graded truth values.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_depth=True):
        if with_depth:
            p.add_argument("--depth", type=int, default=4, help="term depth bound")
        p.add_argument(
            "--format", choices=("text", "json"), default="text", dest="fmt"
        )

    p_model = sub.add_parser("model", help="compute the least model")
    p_model.add_argument("file")
    common(p_model)
    p_model.add_argument("--trace", action="store_true", help="per-level trace")

    p_collapse = sub.add_parser("collapse", help="three-valued collapse")
    p_collapse.add_argument("file")
    common(p_collapse)

    p_sweep = sub.add_parser("sweep", help="values across depth bounds")
    p_sweep.add_argument("file")
    p_sweep.add_argument("--depths", default="1..4", help="range A..B")
    p_sweep.add_argument(
        "--format", choices=("text", "json"), default="text", dest="fmt"
    )

    p_check = sub.add_parser("check", help="verify against exhaustive search")
    p_check.add_argument("file")
    common(p_check)
    p_check.add_argument("--degree-bound", type=int, default=None)
    p_check.add_argument("--budget", type=int, default=2_000_000)

    p_wfs = sub.add_parser("wfs", help="compare with the well-founded model")
    p_wfs.add_argument("file")
    common(p_wfs)

    p_oracle = sub.add_parser("oracle", help="run verification suites")
    p_oracle.add_argument("file", nargs="?")
    p_oracle.add_argument("--random", action="store_true")
    p_oracle.add_argument(
        "--suite", choices=("wfs", "least", "minimal", "all"), default="all"
    )
    p_oracle.add_argument("--seed", type=int, default=0)
    p_oracle.add_argument("--count", type=int, default=None)
    p_oracle.add_argument("--depth", type=int, default=4)
    p_oracle.add_argument("--degree-bound", type=int, default=None)
    p_oracle.add_argument("--budget", type=int, default=2_000_000)
    p_oracle.add_argument(
        "--format", choices=("text", "json"), default="text", dest="fmt"
    )
    return parser


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as handle:
            source = handle.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return parse_program(source)


def _emit(payload: dict, fmt: str, text_lines) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


def cmd_model(args) -> int:
    program = _load(args.file)
    universe = enumerate_universe(program.signature, args.depth)
    result = compute_least_model(program, universe)
    payload = {
        "atoms": interpretation_to_json(result.model),
        "depth_bound": args.depth,
        "delta": str(result.depth),
        "truncated_heads": result.truncated_heads,
    }
    if args.trace:
        payload["trace"] = [t.to_json() for t in result.traces]
    lines = [
        f"{render_atom(atom)} = {value}" for atom, value in result.model.items()
    ]
    lines.append(f"delta_P = {result.depth}")
    if result.truncated_heads:
        lines.append(f"truncated heads: {result.truncated_heads}")
    if args.trace:
        lines.extend(json.dumps(t.to_json()) for t in result.traces)
    _emit(payload, args.fmt, lines)
    return EXIT_OK


def cmd_collapse(args) -> int:
    program = _load(args.file)
    universe = enumerate_universe(program.signature, args.depth)
    result = compute_least_model(program, universe)
    collapsed = collapse(result.model)
    model3 = is_model_3v(program, collapsed, universe)
    payload = {
        "atoms": three_valued_to_json(collapsed),
        "is_3v_model": model3,
        "delta": str(result.depth),
    }
    lines = [f"{render_atom(a)} = {v}" for a, v in collapsed.items()]
    lines.append(f"3-valued model: {'yes' if model3 else 'no'}")
    _emit(payload, args.fmt, lines)
    return EXIT_OK if model3 else EXIT_INTERNAL


def _parse_range(text: str) -> list[int]:
    try:
        low, high = text.split("..")
        depths = list(range(int(low), int(high) + 1))
    except ValueError:
        raise InputError(f"bad depth range {text!r}, expected A..B") from None
    if not depths:
        raise InputError(f"empty depth range {text!r}")
    return depths


def cmd_sweep(args) -> int:
    program = _load(args.file)
    depths = _parse_range(args.depths)
    per_depth = {}
    for depth in depths:
        universe = enumerate_universe(program.signature, depth)
        result = compute_least_model(program, universe)
        per_depth[depth] = {
            atom: value for atom, value in result.model.items()
        }
    top_base = herbrand_base(
        program.signature, enumerate_universe(program.signature, depths[-1])
    )
    rows = []
    for atom in top_base:
        values = {
            depth: per_depth[depth].get(atom) for depth in depths
        }
        last, prev = depths[-1], depths[-2] if len(depths) > 1 else depths[-1]
        stable = values[last] is not None and values[last] == values[prev]
        rows.append((atom, values, "STABLE" if stable else "DIVERGENT"))
    payload = {
        "depths": depths,
        "atoms": [
            {
                "atom": render_atom(atom),
                "values": {
                    str(d): (str(v) if v is not None else None)
                    for d, v in values.items()
                },
                "status": status,
            }
            for atom, values, status in rows
        ],
    }
    lines = []
    name_width = max([len(render_atom(a)) for a, _, _ in rows] + [4]) + 2
    header = "atom".ljust(name_width) + "".join(f"d={d}".ljust(12) for d in depths)
    lines.append(header + "status")
    for atom, values, status in rows:
        cells = "".join(
            (str(v) if v is not None else "-").ljust(12) for v in values.values()
        )
        lines.append(render_atom(atom).ljust(name_width) + cells + status)
    _emit(payload, args.fmt, lines)
    return EXIT_OK


def cmd_check(args) -> int:
    program = _load(args.file)
    universe = enumerate_universe(program.signature, args.depth)
    report = verify_least(program, universe, args.degree_bound, args.budget)
    payload = report.to_json()
    lines = [
        f"model: {'yes' if report.is_model else 'no'}",
        f"fixpoint: {'yes' if report.is_fixed_point else 'no'}",
        f"least: {'yes' if report.passed else 'no'}",
        f"models enumerated: {report.model_count}",
        f"fixed points enumerated: {report.fixed_point_count}",
    ]
    _emit(payload, args.fmt, lines)
    return EXIT_OK if report.passed else EXIT_COUNTEREXAMPLE


def cmd_wfs(args) -> int:
    program = _load(args.file)
    bad = [r for r in program.rules if not is_normal_rule(r)]
    if bad:
        raise InputError(f"not a normal program; offending rule: {bad[0]}")
    universe = enumerate_universe(program.signature, args.depth)
    result = compute_least_model(program, universe)
    collapsed = collapse(result.model)
    grounded = ground_program(program, universe)
    reference = wfs_normal(grounded.rules, collapsed.base)
    match = all(
        collapsed.value(a) == reference.value(a) for a in collapsed.base
    )
    payload = {
        "collapsed": three_valued_to_json(collapsed),
        "well_founded": three_valued_to_json(reference),
        "match": match,
    }
    lines = [
        f"{render_atom(a)}: collapse={collapsed.value(a)} wfs={reference.value(a)}"
        for a in collapsed.base
    ]
    lines.append("MATCH" if match else "MISMATCH")
    _emit(payload, args.fmt, lines)
    return EXIT_OK if match else EXIT_COUNTEREXAMPLE


def cmd_oracle(args) -> int:
    if args.random:
        return _oracle_random(args)
    if not args.file:
        raise InputError("oracle needs a file or --random")
    return _oracle_file(args)


def _oracle_random(args) -> int:
    defaults = {"wfs": 200, "least": 50, "minimal": 30}
    suites = [args.suite] if args.suite != "all" else ["wfs", "least", "minimal"]
    reports = []
    for name in suites:
        count = args.count if args.count is not None else defaults[name]
        if name == "wfs":
            reports.append(run_wfs_differential(args.seed, count))
        elif name == "least":
            reports.append(run_least_model_suite(args.seed, count))
        else:
            reports.append(run_minimality_suite(args.seed, count))
    payload = {"suites": [r.to_json() for r in reports]}
    lines = [
        f"{r.name}: {r.passed}/{r.total} pass" for r in reports
    ]
    _emit(payload, args.fmt, lines)
    return EXIT_OK if all(r.ok for r in reports) else EXIT_COUNTEREXAMPLE


def _oracle_file(args) -> int:
    program = _load(args.file)
    universe = enumerate_universe(program.signature, args.depth)
    least = verify_least(program, universe, args.degree_bound, args.budget)
    minimal = check_minimal_3v(program, universe, args.budget)
    payload = {
        "least": least.to_json(),
        "minimality": minimal.to_json(),
    }
    lines = [
        f"least model verified: {'yes' if least.passed else 'no'}",
        f"minimality hypothesis (negation depth <= 1): "
        f"{'ok' if minimal.hypothesis_ok else 'violated'}",
    ]
    if not minimal.hypothesis_ok:
        for rule in minimal.offending_rules:
            lines.append(f"  offending rule: {rule}")
    if minimal.minimal is not None:
        lines.append(f"collapse minimal: {'yes' if minimal.minimal else 'no'}")
        for smaller in minimal.smaller_models[:3]:
            lines.append(f"  smaller 3-valued model: {smaller}")
    # a smaller model under a violated hypothesis is expected, not a failure
    verdict = EXIT_OK
    if not least.passed or (minimal.hypothesis_ok and not minimal.minimal):
        verdict = EXIT_COUNTEREXAMPLE
    _emit(payload, args.fmt, lines)
    return verdict


_COMMANDS = {
    "model": cmd_model,
    "collapse": cmd_collapse,
    "sweep": cmd_sweep,
    "check": cmd_check,
    "wfs": cmd_wfs,
    "oracle": cmd_oracle,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (FixpointInvariantError, OrdlpError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
