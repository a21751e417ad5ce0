"""Benchmark runner: seeded instance families to CSV rows.

A family config is a JSON object:

    {"seed": 7,
     "families": [
        {"name": "small", "n": 3, "z_size": 2, "trials": 10,
         "k": [1, 10, "n5+1"], "probs": "uniform"}
     ]}

Each trial draws an instance, runs the approximate solver and, budget
permitting, the exact solver.  Rows are deterministic for a fixed seed except
for the wall-time column.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

from . import approx, exact
from .core import Instance
from .corpus import random_instance
from .errors import BudgetExceeded, InputFormatError

__all__ = ["Family", "parse_config", "run_bench", "CSV_HEADER"]

CSV_HEADER = ["instance_id", "n", "z_size", "k", "approx_cost", "exact_cost", "ratio", "wall_time_ms"]

_K_SCHEDULE_DEFAULT = (1, 10, "n5+1")


@dataclass(frozen=True)
class Family:
    name: str
    n: int
    z_size: int
    trials: int
    k_schedule: tuple[object, ...]
    uniform_probs: bool


def _parse_k_schedule(raw: object, where: str) -> tuple[object, ...]:
    if raw is None:
        return _K_SCHEDULE_DEFAULT
    items = raw if isinstance(raw, list) else [raw]
    schedule = []
    for item in items:
        if isinstance(item, int) and item > 0:
            schedule.append(item)
        elif item == "n5+1":
            schedule.append("n5+1")
        else:
            raise InputFormatError(f"{where}: k entries must be positive ints or 'n5+1'")
    if not schedule:
        raise InputFormatError(f"{where}: empty k schedule")
    return tuple(schedule)


def parse_config(doc: object) -> tuple[int | None, tuple[Family, ...]]:
    if not isinstance(doc, dict):
        raise InputFormatError("bench config must be a JSON object")
    seed = doc.get("seed")
    if seed is not None and not isinstance(seed, int):
        raise InputFormatError("bench config seed must be an integer")
    raw_families = doc.get("families", [])
    if not isinstance(raw_families, list):
        raise InputFormatError("bench config 'families' must be a list")
    families = []
    for idx, raw in enumerate(raw_families):
        where = f"family #{idx}"
        if not isinstance(raw, dict):
            raise InputFormatError(f"{where} must be an object")
        try:
            n = int(raw["n"])
            z_size = int(raw["z_size"])
            trials = int(raw["trials"])
        except (KeyError, TypeError, ValueError):
            raise InputFormatError(f"{where} needs integer 'n', 'z_size', 'trials'") from None
        if n < 1 or z_size < 1 or trials < 0:
            raise InputFormatError(f"{where}: n, z_size must be >= 1 and trials >= 0")
        probs = raw.get("probs", "random")
        if probs not in ("random", "uniform"):
            raise InputFormatError(f"{where}: probs must be 'random' or 'uniform'")
        families.append(
            Family(
                name=str(raw.get("name", f"fam{idx}")),
                n=n,
                z_size=z_size,
                trials=trials,
                k_schedule=_parse_k_schedule(raw.get("k"), where),
                uniform_probs=probs == "uniform",
            )
        )
    return seed, tuple(families)


def _k_value(spec: object, n: int) -> Fraction:
    return Fraction(n**5 + 1) if spec == "n5+1" else Fraction(spec)  # type: ignore[arg-type]


def run_bench(
    families: tuple[Family, ...],
    seed: int,
    *,
    budget: int = exact.DEFAULT_BUDGET,
) -> list[list[str]]:
    """All CSV rows (header first) for the given families."""
    rows = [list(CSV_HEADER)]
    rng = random.Random(seed)
    for family in families:
        for trial in range(family.trials):
            base = random_instance(
                rng,
                min_support=family.n,
                max_support=family.n,
                min_noise=family.z_size,
                max_noise=family.z_size,
                uniform_probs=family.uniform_probs,
            )
            k = _k_value(family.k_schedule[trial % len(family.k_schedule)], family.n)
            instance = Instance(base.x0, base.z, k)
            start = time.perf_counter()
            approx_result = approx.solve(instance)
            exact_total: Fraction | None = None
            try:
                exact_total = exact.solve(instance, budget=budget).cost.total
            except BudgetExceeded:
                pass
            elapsed_ms = round((time.perf_counter() - start) * 1000)
            if exact_total is None:
                exact_text = ratio_text = "NA"
            else:
                exact_text = str(exact_total)
                ratio_text = "NA" if exact_total == 0 else str(approx_result.cost.total / exact_total)
            rows.append(
                [
                    f"{family.name}-{trial:03d}",
                    str(family.n),
                    str(len(instance.z)),
                    str(k),
                    str(approx_result.cost.total),
                    exact_text,
                    ratio_text,
                    str(elapsed_ms),
                ]
            )
    return rows
