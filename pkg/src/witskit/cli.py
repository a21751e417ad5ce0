"""Command-line interface.

Subcommands: sidon, reduce, l2chrom, solve-approx, solve-exact, eval, verify,
bench.  Exit codes: 0 success, 1 verification failure, 2 input error,
3 search budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import approx, bench, exact, verify
from .core import evaluate_cost
from .errors import BudgetExceeded, InputFormatError, WitskitError
from .reduction import graph_to_instance, l2_chromatic_bruteforce
from .serialize import (
    canonical_dumps,
    cost_to_json,
    instance_from_json,
    instance_to_json,
    parse_dimacs,
    rational_to_json,
    reduction_sidecar_to_json,
    sidon_to_json,
    strategy_from_json,
    strategy_to_json,
)
from .sidon import construct_sidon


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from None


def _read_json(path: str):
    text = _read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path} is not valid JSON: {exc}") from None


def _emit(args: argparse.Namespace, text: str) -> None:
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _resolve_format(args: argparse.Namespace, default: str, supported: tuple[str, ...]) -> str:
    fmt = args.format or default
    if fmt not in supported:
        raise InputFormatError(
            f"format {fmt!r} is not supported by this command (expected one of {supported})"
        )
    return fmt


def _cmd_sidon(args: argparse.Namespace) -> int:
    _resolve_format(args, "json", ("json",))
    if args.order != 4:
        raise InputFormatError("only order-4 construction is supported")
    built = construct_sidon(args.k)
    _emit(args, canonical_dumps(sidon_to_json(built)))
    return 0


def _cmd_reduce(args: argparse.Namespace) -> int:
    _resolve_format(args, "json", ("json",))
    graph = parse_dimacs(_read_text(args.graph))
    reduced = graph_to_instance(graph)
    instance_doc = instance_to_json(reduced.instance)
    sidecar_doc = reduction_sidecar_to_json(reduced)
    if args.output:
        Path(args.output).write_text(canonical_dumps(instance_doc))
        sidecar_path = args.sidecar or args.output + ".sidecar.json"
        Path(sidecar_path).write_text(canonical_dumps(sidecar_doc))
    else:
        sys.stdout.write(canonical_dumps({"instance": instance_doc, "sidecar": sidecar_doc}))
        if args.sidecar:
            Path(args.sidecar).write_text(canonical_dumps(sidecar_doc))
    return 0


def _cmd_l2chrom(args: argparse.Namespace) -> int:
    _resolve_format(args, "json", ("json",))
    graph = parse_dimacs(_read_text(args.graph))
    gamma_star, witness = l2_chromatic_bruteforce(graph, limit=args.limit)
    doc = {"gamma_star": rational_to_json(gamma_star), "witness": list(witness.values)}
    _emit(args, canonical_dumps(doc))
    return 0


def _cmd_solve_approx(args: argparse.Namespace) -> int:
    _resolve_format(args, "json", ("json",))
    instance = instance_from_json(_read_json(args.instance))
    result = approx.solve(instance)
    doc = {
        "best_k": result.best_k,
        "strategy": strategy_to_json(*result.strategy),
        "cost": cost_to_json(result.cost),
    }
    _emit(args, canonical_dumps(doc))
    if args.emit_per_k:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["k", "total_num", "total_den"])
        for k, total in result.per_k_costs:
            writer.writerow([k, total.numerator, total.denominator])
    return 0


def _cmd_solve_exact(args: argparse.Namespace) -> int:
    _resolve_format(args, "json", ("json",))
    instance = instance_from_json(_read_json(args.instance))
    result = exact.solve(instance, budget=args.budget)
    doc = {
        "strategy": strategy_to_json(*result.strategy),
        "cost": cost_to_json(result.cost),
        "explored": result.explored,
        "window_bound": list(result.window_bound),
    }
    _emit(args, canonical_dumps(doc))
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    _resolve_format(args, "json", ("json",))
    instance = instance_from_json(_read_json(args.instance))
    transport, second = strategy_from_json(_read_json(args.strategy))
    cost = evaluate_cost(instance, transport, second)
    _emit(args, canonical_dumps(cost_to_json(cost)))
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    fmt = _resolve_format(args, "json", ("json", "table"))
    kwargs = {"seed": args.seed, "budget": args.budget}
    if args.max_k is not None:
        kwargs["max_k"] = args.max_k
    if args.max_n is not None:
        kwargs["sandwich_max_n"] = args.max_n
        kwargs["reduction_max_n"] = args.max_n
    if args.trials is not None:
        kwargs["ratio_trials"] = args.trials
    report = verify.run_verify(args.scope, **kwargs)
    if fmt == "table":
        _emit(args, verify.report_to_table(report))
    else:
        _emit(args, canonical_dumps(verify.report_to_json(report)))
    return 0 if report.all_pass else 1


def _cmd_bench(args: argparse.Namespace) -> int:
    _resolve_format(args, "csv", ("csv",))
    config_seed, families = bench.parse_config(_read_json(args.config))
    seed = config_seed if config_seed is not None else args.seed
    rows = bench.run_bench(families, seed, budget=args.budget)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows(rows)
    _emit(args, buffer.getvalue())
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("--output", default=None, help="write the main payload to this path")
    common.add_argument("--format", choices=("json", "table", "csv"), default=None)

    parser = argparse.ArgumentParser(
        prog="witskit",
        description="Exact, approximate, and reduction tooling for the discrete "
        "Witsenhausen problem.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sidon", parents=[common], help="construct an order-4 Sidon set")
    p.add_argument("--k", type=int, required=True, help="number of elements")
    p.add_argument("--order", type=int, default=4)
    p.set_defaults(func=_cmd_sidon)

    p = sub.add_parser("reduce", parents=[common], help="build the instance for a graph")
    p.add_argument("--graph", required=True, help="DIMACS-style edge list file")
    p.add_argument("--sidecar", default=None, help="where to write the reduction sidecar")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("l2chrom", parents=[common], help="exact l2-chromatic number")
    p.add_argument("--graph", required=True)
    p.add_argument("--limit", type=int, default=6, help="largest vertex count accepted")
    p.set_defaults(func=_cmd_l2chrom)

    p = sub.add_parser("solve-approx", parents=[common], help="run the approximate solver")
    p.add_argument("--instance", required=True, help="instance JSON file")
    p.add_argument("--emit-per-k", action="store_true", help="also print the per-k cost CSV")
    p.set_defaults(func=_cmd_solve_approx)

    p = sub.add_parser("solve-exact", parents=[common], help="run the exact solver")
    p.add_argument("--instance", required=True)
    p.add_argument("--budget", type=int, default=exact.DEFAULT_BUDGET)
    p.set_defaults(func=_cmd_solve_exact)

    p = sub.add_parser("eval", parents=[common], help="evaluate a strategy on an instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--strategy", required=True, help="strategy JSON file")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("verify", parents=[common], help="run the property-check suites")
    p.add_argument("scope", choices=verify.SCOPES)
    p.add_argument("--max-k", type=int, default=None, help="sidon size cap")
    p.add_argument("--max-n", type=int, default=None, help="graph size cap")
    p.add_argument("--trials", type=int, default=None, help="ratio-check instance count")
    p.add_argument("--budget", type=int, default=exact.DEFAULT_BUDGET)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("bench", parents=[common], help="run instance families to CSV")
    p.add_argument("--config", required=True, help="family config JSON file")
    p.add_argument("--budget", type=int, default=exact.DEFAULT_BUDGET)
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (WitskitError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
