"""Polynomial-time approximate solver via collision-free interpolation.

The solver sweeps k = 0..n: it keeps the k highest-probability state atoms in
place and greedily relocates the rest so that no two differently-transported
atoms can produce the same observation.  Each candidate transport gets its
least-squares second stage and an exact evaluation; the cheapest pair wins.
The relocation never moves an atom further than |X| * |Z|**2, and the winning
cost is within a factor |X|**3 * |Z|**4 of the exact optimum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    CostBreakdown,
    Instance,
    ProbMass,
    SecondStageMap,
    TransportMap,
    evaluate_cost,
    optimal_second_stage,
)

__all__ = ["ApproxResult", "rank_atoms", "collision_free_transport", "solve", "cost_ratio_bound"]


@dataclass(frozen=True)
class ApproxResult:
    """Winning strategy of the interpolation sweep plus the full per-k cost table."""

    best_k: int
    strategy: tuple[TransportMap, SecondStageMap]
    cost: CostBreakdown
    per_k_costs: tuple[tuple[int, Fraction], ...]


def rank_atoms(x0: ProbMass) -> tuple[tuple[int, Fraction], ...]:
    """Atoms sorted by descending probability, ties broken by ascending value."""
    return tuple(sorted(x0.atoms, key=lambda atom: (-atom[1], atom[0])))


def collision_free_transport(instance: Instance, k: int) -> TransportMap:
    """Fix the k top-ranked atoms, relocate the rest to collision-free values.

    Relocated atoms are processed in rank order.  Each one must avoid every
    value t_j + z_b - z_a over previously placed atoms j (fixed or moved) and
    all noise pairs; the candidate scan tries distances 0, 1, 2, ... from the
    atom's own value, checking the smaller candidate first at each distance.
    """
    ranked = rank_atoms(instance.x0)
    n = len(ranked)
    if not 0 <= k <= n:
        raise ValueError(f"k must be within 0..{n}, got {k}")
    zs = instance.z.support
    diffs = sorted({zb - za for za in zs for zb in zs})
    placed: list[int] = []
    entries: dict[int, int] = {}
    for rank, (x, _) in enumerate(ranked):
        if rank < k:
            target = x
        else:
            forbidden = {t + d for t in placed for d in diffs}
            target = x
            distance = 0
            while True:
                if x - distance not in forbidden:
                    target = x - distance
                    break
                if x + distance not in forbidden:
                    target = x + distance
                    break
                distance += 1
        placed.append(target)
        entries[x] = target
    return TransportMap.from_mapping(entries)


def solve(instance: Instance) -> ApproxResult:
    """Run the full interpolation sweep and return the cheapest (T, delta) pair.

    Cost ties across k resolve to the larger k (more atoms left in place).
    """
    n = len(instance.x0)
    per_k: list[tuple[int, Fraction]] = []
    best: tuple[int, TransportMap, SecondStageMap, CostBreakdown] | None = None
    for k in range(n + 1):
        transport = collision_free_transport(instance, k)
        second = optimal_second_stage(instance, transport)
        cost = evaluate_cost(instance, transport, second)
        per_k.append((k, cost.total))
        if best is None or cost.total <= best[3].total:
            best = (k, transport, second, cost)
    assert best is not None
    return ApproxResult(best[0], (best[1], best[2]), best[3], tuple(per_k))


def cost_ratio_bound(instance: Instance) -> int:
    """The guaranteed approximation factor |X|**3 * |Z|**4 for this instance."""
    return len(instance.x0) ** 3 * len(instance.z) ** 4
