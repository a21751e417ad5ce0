"""Exhaustive exact solver for small instances, with a certified search window.

Finiteness comes from a displacement argument: once any feasible strategy of
total cost UB is known, a transport that moves an atom of probability p by
more than floor(sqrt(UB / p)) already pays a first-stage cost above UB and
cannot be optimal.  The solver therefore
  1. runs the approximate solver and a deterministic local descent to get a
     tight feasible UB,
  2. derives per-atom windows from that UB (optionally intersected with a
     caller-supplied analytic cap),
  3. enumerates every transport inside the windows in lexicographic order,
     skipping branches whose first-stage cost alone already exceeds the best
     total seen.
The returned witness is the lexicographically smallest optimal transport
vector in atom order; ``explored`` counts the transports that received a full
second-stage evaluation and is reproducible run to run.

All comparisons happen in integer arithmetic: costs are scaled by the common
denominator of the atom probabilities and the weight, which is exactly
equivalent to the public Fraction evaluation and roughly an order of
magnitude faster.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .approx import collision_free_transport, solve as approx_solve
from .core import (
    CostBreakdown,
    Instance,
    SecondStageMap,
    TransportMap,
    evaluate_cost,
    optimal_second_stage,
)
from .errors import BudgetExceeded

__all__ = ["ExactResult", "solve", "DEFAULT_BUDGET"]

DEFAULT_BUDGET = 5_000_000

_DESCENT_STEP_LIMIT = 5000


@dataclass(frozen=True)
class ExactResult:
    """Certified optimum: strategy, exact cost, windows used, and work done."""

    strategy: tuple[TransportMap, SecondStageMap]
    cost: CostBreakdown
    window_bound: tuple[int, ...]
    explored: int


@dataclass(frozen=True)
class _Scaled:
    """Instance with probabilities cleared to integer weights.

    prob(x_i) = cx[i] / dx, prob(z_j) = cz[j] / dz, weight = kn / kd.  A total
    cost c corresponds to the integer c * dx * dz * kd.
    """

    xs: tuple[int, ...]
    cx: tuple[int, ...]
    dx: int
    zs: tuple[int, ...]
    cz: tuple[int, ...]
    dz: int
    kn: int
    kd: int

    @property
    def scale(self) -> int:
        return self.dx * self.dz * self.kd


def _scale_instance(instance: Instance) -> _Scaled:
    dx = math.lcm(*(p.denominator for _, p in instance.x0.atoms))
    dz = math.lcm(*(p.denominator for _, p in instance.z.atoms))
    return _Scaled(
        xs=instance.x0.support,
        cx=tuple(int(p * dx) for _, p in instance.x0.atoms),
        dx=dx,
        zs=instance.z.support,
        cz=tuple(int(p * dz) for _, p in instance.z.atoms),
        dz=dz,
        kn=instance.k.numerator,
        kd=instance.k.denominator,
    )


def _round_ratio(num: int, den: int) -> int:
    """Nearest integer to num/den (den > 0); same tie rule as core.nearest_int."""
    f = num // den
    r = num - f * den
    twice = 2 * r
    if twice < den:
        return f
    if twice > den:
        return f + 1
    lo, hi = f, f + 1
    if abs(lo) < abs(hi):
        return lo
    if abs(hi) < abs(lo):
        return hi
    return lo


def _second_stage_scaled(s: _Scaled, tvec) -> int:
    """Scaled optimal second-stage cost sum(cx*cz*(t+delta)^2) for a transport vector."""
    groups: dict[int, list[tuple[int, int]]] = {}
    for i, t in enumerate(tvec):
        cxi = s.cx[i]
        for j, z in enumerate(s.zs):
            groups.setdefault(t + z, []).append((t, cxi * s.cz[j]))
    total = 0
    for contribs in groups.values():
        t0 = contribs[0][0]
        if all(t == t0 for t, _ in contribs):
            continue  # a single transported value is cancelled exactly
        s0 = 0
        s1 = 0
        for t, w in contribs:
            s0 += w
            s1 += w * t
        d = _round_ratio(-s1, s0)
        for t, w in contribs:
            err = t + d
            total += w * err * err
    return total


def _total_scaled(s: _Scaled, tvec) -> int:
    """Total cost of (tvec, optimal second stage), scaled by dx*dz*kd."""
    phi1 = 0
    for i, t in enumerate(tvec):
        d = t - s.xs[i]
        phi1 += s.cx[i] * d * d
    return s.dz * s.kd * phi1 + s.kn * _second_stage_scaled(s, tvec)


def _descend(s: _Scaled, tvec: tuple[int, ...]) -> tuple[tuple[int, ...], int]:
    """Deterministic +-1 coordinate descent; only used to tighten the upper bound."""
    current = list(tvec)
    cost = _total_scaled(s, current)
    for _ in range(_DESCENT_STEP_LIMIT):
        improved = False
        for i in range(len(current)):
            for step in (-1, 1):
                current[i] += step
                cand = _total_scaled(s, current)
                if cand < cost:
                    cost = cand
                    improved = True
                else:
                    current[i] -= step
        if not improved:
            break
    return tuple(current), cost


def _floor_sqrt_ratio(num: int, den: int) -> int:
    """floor(sqrt(num/den)) for nonnegative num and positive den."""
    return math.isqrt(num * den) // den


def solve(
    instance: Instance,
    *,
    budget: int = DEFAULT_BUDGET,
    window_cap: int | None = None,
    upper_bound: Fraction | None = None,
    widen: int = 0,
) -> ExactResult:
    """Exhaustively find the minimum-cost strategy for a small instance.

    ``budget`` caps the window product (the number of transports the
    enumeration would visit); :class:`BudgetExceeded` reports the computed
    size instead of silently truncating.  ``window_cap``, when given, is an
    additional per-atom displacement bound the caller certifies (any optimal
    transport moves each atom by at most the cap).  ``upper_bound`` must be
    the total cost of some feasible strategy if supplied.  ``widen`` enlarges
    every window for stability audits.
    """
    s = _scale_instance(instance)
    scale = s.scale
    n = len(s.xs)

    approx_result = approx_solve(instance)
    winner_vec = tuple(approx_result.strategy[0][x] for x in s.xs)
    best = _total_scaled(s, winner_vec)
    if Fraction(best, scale) != approx_result.cost.total:
        raise AssertionError("scaled evaluation disagrees with Fraction evaluation")

    seeds = {winner_vec, s.xs}
    for k in range(n + 1):
        t = collision_free_transport(instance, k)
        seeds.add(tuple(t[x] for x in s.xs))
    for seed in sorted(seeds):
        _, cost = _descend(s, seed)
        if cost < best:
            best = cost
    if upper_bound is not None:
        hinted = (upper_bound.numerator * scale) // upper_bound.denominator
        if hinted < best:
            best = hinted

    windows = []
    for cxi in s.cx:
        w = _floor_sqrt_ratio(best, s.dz * s.kd * cxi)
        if window_cap is not None:
            w = min(w, window_cap)
        windows.append(w + widen)
    windows_t = tuple(windows)

    search_space = 1
    for w in windows_t:
        search_space *= 2 * w + 1
    if search_space > budget:
        raise BudgetExceeded(search_space, budget)

    witness: tuple[int, ...] | None = None
    explored = 0
    tvec = [0] * n
    dzkd = s.dz * s.kd
    xs = s.xs
    cx = s.cx
    kn = s.kn

    def enumerate_from(i: int, partial: int) -> None:
        nonlocal best, witness, explored
        if i == n:
            total = partial + kn * _second_stage_scaled(s, tvec)
            explored += 1
            if total < best:
                best = total
                witness = tuple(tvec)
            elif total == best and witness is None:
                witness = tuple(tvec)
            return
        x = xs[i]
        coeff = dzkd * cx[i]
        for offset in range(-windows_t[i], windows_t[i] + 1):
            partial_i = partial + coeff * offset * offset
            if partial_i > best or (partial_i == best and witness is not None):
                if offset >= 0:
                    break  # first-stage cost only grows from here
                continue
            tvec[i] = x + offset
            enumerate_from(i + 1, partial_i)

    enumerate_from(0, 0)
    if witness is None:
        raise AssertionError(
            "no optimal transport found inside the certified windows; "
            "was upper_bound actually feasible?"
        )

    transport = TransportMap(tuple(zip(xs, witness)))
    second = optimal_second_stage(instance, transport)
    cost = evaluate_cost(instance, transport, second)
    if cost.total != Fraction(best, scale):
        raise AssertionError("winner re-evaluation disagrees with the scaled search")
    return ExactResult((transport, second), cost, windows_t, explored)
