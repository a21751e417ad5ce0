"""Property-check harness: re-derives the toolkit's key identities at desk scale.

Four suites are available:

* ``sidon``     — greedy construction stays within its size bound and passes
                  the brute-force order-4 check.
* ``sandwich``  — chromatic number vs l2-chromatic number inequalities on
                  every labeled graph up to a size cap.
* ``reduction`` — the exact optimum of every reduced instance equals the
                  graph's l2-chromatic number, on connected graphs with at
                  least one edge.
* ``ratio``     — the approximate solver stays within its |X|**3 * |Z|**4
                  guarantee against the exact optimum on seeded random
                  instances.

The ``all`` scope additionally runs a small frozen calibration group so that
off-by-one mutations of the reduction constants or the rounding tie rule are
caught even where the lemma-level identities have slack.

Reports carry exact observed values only (rationals as strings), so reruns
with the same seed are byte-identical.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Any, Iterator

from . import approx, exact
from . import core
from .corpus import describe_instance, random_instance
from .errors import BudgetExceeded
from .reduction import (
    Graph,
    chromatic_bruteforce,
    check_chromatic_sandwich,
    coloring_to_strategy,
    graph_to_instance,
    l2_chromatic_bruteforce,
)
from .core import evaluate_cost, identity_transport, make_instance
from .sidon import construct_sidon, is_sidon

__all__ = [
    "CheckRecord",
    "VerifyReport",
    "SCOPES",
    "all_graphs",
    "connected_graphs",
    "is_connected",
    "run_verify",
    "report_to_json",
    "report_to_table",
]

SCOPES = ("sidon", "sandwich", "reduction", "ratio", "all")

DEFAULT_MAX_K = 8
DEFAULT_SANDWICH_N = 5
DEFAULT_REDUCTION_N = 4
DEFAULT_RATIO_TRIALS = 20


@dataclass(frozen=True)
class CheckRecord:
    check: str
    subject: str
    relation: str
    observed: tuple[tuple[str, str], ...]
    passed: bool


@dataclass(frozen=True)
class VerifyReport:
    scope: str
    seed: int
    limits: tuple[tuple[str, int], ...]
    records: tuple[CheckRecord, ...]
    skipped: int = 0

    @property
    def all_pass(self) -> bool:
        return all(r.passed for r in self.records)


def all_graphs(n: int, min_edges: int = 0) -> Iterator[Graph]:
    """All labeled graphs on vertices 1..n, in mask order over the pair list."""
    pairs = list(combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        if mask.bit_count() < min_edges:
            continue
        edges = frozenset(p for b, p in enumerate(pairs) if mask >> b & 1)
        yield Graph(n, edges)


def graph_label(graph: Graph) -> str:
    pairs = list(combinations(range(1, graph.n + 1), 2))
    mask = sum(1 << b for b, p in enumerate(pairs) if p in graph.edges)
    return f"n{graph.n}-x{mask:x}"


def is_connected(graph: Graph) -> bool:
    if graph.n == 1:
        return True
    adjacency: dict[int, set[int]] = {v: set() for v in range(1, graph.n + 1)}
    for i, j in graph.edges:
        adjacency[i].add(j)
        adjacency[j].add(i)
    seen = {1}
    frontier = [1]
    while frontier:
        v = frontier.pop()
        for u in adjacency[v]:
            if u not in seen:
                seen.add(u)
                frontier.append(u)
    return len(seen) == graph.n


def connected_graphs(n: int, min_edges: int = 1) -> Iterator[Graph]:
    for graph in all_graphs(n, min_edges):
        if is_connected(graph):
            yield graph


def _floor_sqrt(q: Fraction) -> int:
    return math.isqrt(q.numerator * q.denominator) // q.denominator


def _check_calibration() -> list[CheckRecord]:
    """Frozen desk examples; sensitive to off-by-ones in the reduction constants
    and to the rounding tie rule, which the lemma-level checks alone are not."""
    records = []

    reduced = graph_to_instance(Graph.from_edges(2, [(1, 2)]))
    observed = (
        ("scale", str(reduced.scale)),
        ("x_values", str(list(reduced.x_values))),
        ("weight", str(reduced.instance.k)),
        ("z_support", str(list(reduced.instance.z.support))),
    )
    ok = (
        reduced.scale == 16
        and reduced.x_values == (16, 336)
        and reduced.instance.k == Fraction(33)
        and reduced.instance.z.support == (-160, 160)
    )
    records.append(
        CheckRecord(
            check="calibration",
            subject="k2-reduction",
            relation="scale=16, x=(16,336), weight=33, noise=(-160,160)",
            observed=observed,
            passed=ok,
        )
    )

    half = Fraction(1, 2)
    instance = make_instance([(0, half), (1, half)], [(0, half), (1, half)], 1)
    second = core.optimal_second_stage(instance, identity_transport(instance))
    ok = (
        second.entries == ((0, 0), (1, 0), (2, -1))
        and core.nearest_int(half) == 0
        and core.nearest_int(-half) == 0
    )
    records.append(
        CheckRecord(
            check="calibration",
            subject="half-tie-rounding",
            relation="half ties round toward the smaller absolute value",
            observed=(("delta", str(list(second.entries))),),
            passed=ok,
        )
    )
    return records


def _check_sidon(max_k: int) -> list[CheckRecord]:
    records = []
    for k in range(1, max_k + 1):
        built = construct_sidon(k)
        bound = 20 * k**8
        ok = (
            len(built.elements) == k
            and built.elements[-1] <= bound
            and is_sidon(built.elements, 4)
            and (k != 1 or built.elements == (1,))
        )
        records.append(
            CheckRecord(
                check="sidon",
                subject=f"k={k}",
                relation=f"|S|=k, max(S) <= {bound}, order-4 sums distinct",
                observed=(("elements", str(list(built.elements))),),
                passed=ok,
            )
        )
    return records


def _check_sandwich(max_n: int) -> list[CheckRecord]:
    records = []
    for n in range(1, max_n + 1):
        for graph in all_graphs(n):
            kappa = chromatic_bruteforce(graph)
            gamma_star, _ = l2_chromatic_bruteforce(graph)
            ok = check_chromatic_sandwich(graph)
            records.append(
                CheckRecord(
                    check="sandwich",
                    subject=graph_label(graph),
                    relation="kappa^2 >= gamma* and 12*n*gamma* >= (kappa-2)^3",
                    observed=(("kappa", str(kappa)), ("gamma_star", str(gamma_star))),
                    passed=ok,
                )
            )
    return records


def _check_reduction(max_n: int, budget: int) -> list[CheckRecord]:
    records = []
    for n in range(2, max_n + 1):
        for graph in connected_graphs(n):
            reduced = graph_to_instance(graph)
            gamma_star, witness = l2_chromatic_bruteforce(graph)
            transport, second = coloring_to_strategy(reduced, witness)
            feasible = evaluate_cost(reduced.instance, transport, second).total
            cap = min(_floor_sqrt(Fraction(n**3)), _floor_sqrt(feasible * n))
            result = exact.solve(
                reduced.instance,
                budget=budget,
                window_cap=cap,
                upper_bound=feasible,
            )
            ok = result.cost.total == gamma_star
            records.append(
                CheckRecord(
                    check="reduction",
                    subject=graph_label(graph),
                    relation="exact optimum == l2-chromatic number",
                    observed=(
                        ("gamma_star", str(gamma_star)),
                        ("exact_total", str(result.cost.total)),
                        ("explored", str(result.explored)),
                    ),
                    passed=ok,
                )
            )
    return records


def _check_ratio(trials: int, seed: int, budget: int) -> tuple[list[CheckRecord], int]:
    rng = random.Random(seed)
    records = []
    skipped = 0
    attempts = 0
    max_attempts = max(50 * trials, 100)
    while len(records) < trials and attempts < max_attempts:
        attempts += 1
        instance = random_instance(rng)
        approx_result = approx.solve(instance)
        try:
            exact_result = exact.solve(instance, budget=budget)
        except BudgetExceeded:
            skipped += 1
            continue
        bound = approx.cost_ratio_bound(instance)
        opt = exact_result.cost.total
        got = approx_result.cost.total
        if opt == 0:
            ok = got == 0
            ratio = "NA"
        else:
            ratio_value = got / opt
            ok = ratio_value <= bound
            ratio = str(ratio_value)
        records.append(
            CheckRecord(
                check="ratio",
                subject=f"trial{attempts:04d}-{describe_instance(instance)}",
                relation=f"approx_total <= {bound} * exact_total",
                observed=(
                    ("approx_total", str(got)),
                    ("exact_total", str(opt)),
                    ("ratio", ratio),
                ),
                passed=ok,
            )
        )
    if len(records) < trials:
        records.append(
            CheckRecord(
                check="ratio",
                subject="completion-count",
                relation=f"{trials} instances solvable within budget",
                observed=(("completed", str(len(records))), ("skipped", str(skipped))),
                passed=False,
            )
        )
    return records, skipped


def run_verify(
    scope: str,
    *,
    max_k: int = DEFAULT_MAX_K,
    sandwich_max_n: int = DEFAULT_SANDWICH_N,
    reduction_max_n: int = DEFAULT_REDUCTION_N,
    ratio_trials: int = DEFAULT_RATIO_TRIALS,
    seed: int = 0,
    budget: int = exact.DEFAULT_BUDGET,
) -> VerifyReport:
    if scope not in SCOPES:
        raise ValueError(f"unknown scope {scope!r}, expected one of {SCOPES}")
    records: list[CheckRecord] = []
    skipped = 0
    limits: list[tuple[str, int]] = []
    if scope == "all":
        records.extend(_check_calibration())
    if scope in ("sidon", "all"):
        limits.append(("max_k", max_k))
        records.extend(_check_sidon(max_k))
    if scope in ("sandwich", "all"):
        limits.append(("sandwich_max_n", sandwich_max_n))
        records.extend(_check_sandwich(sandwich_max_n))
    if scope in ("reduction", "all"):
        limits.append(("reduction_max_n", reduction_max_n))
        records.extend(_check_reduction(reduction_max_n, budget))
    if scope in ("ratio", "all"):
        limits.append(("ratio_trials", ratio_trials))
        ratio_records, skipped = _check_ratio(ratio_trials, seed, budget)
        records.extend(ratio_records)
    return VerifyReport(scope, seed, tuple(limits), tuple(records), skipped)


def report_to_json(report: VerifyReport) -> dict[str, Any]:
    failed = sum(1 for r in report.records if not r.passed)
    return {
        "scope": report.scope,
        "seed": report.seed,
        "limits": dict(report.limits),
        "records": [
            {
                "check": r.check,
                "subject": r.subject,
                "relation": r.relation,
                "observed": dict(r.observed),
                "passed": r.passed,
            }
            for r in report.records
        ],
        "summary": {
            "records": len(report.records),
            "passed": len(report.records) - failed,
            "failed": failed,
            "skipped": report.skipped,
        },
    }


def report_to_table(report: VerifyReport) -> str:
    headers = ("CHECK", "SUBJECT", "RELATION", "OBSERVED", "PASS")
    rows = [
        (
            r.check,
            r.subject,
            r.relation,
            "; ".join(f"{k}={v}" for k, v in r.observed),
            "ok" if r.passed else "FAIL",
        )
        for r in report.records
    ]
    widths = [max(len(h), *(len(row[i]) for row in rows)) if rows else len(h) for i, h in enumerate(headers)]
    lines = ["  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)).rstrip()]
    for row in rows:
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
    failed = sum(1 for r in report.records if not r.passed)
    lines.append(
        f"{len(report.records)} checks, {len(report.records) - failed} passed, "
        f"{failed} failed, {report.skipped} skipped"
    )
    return "\n".join(lines) + "\n"
