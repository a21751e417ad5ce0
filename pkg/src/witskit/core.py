"""Data model and exact cost evaluation for the discrete Witsenhausen problem.

A problem instance is a pair of finite integer-valued distributions (initial
state and observation noise) plus a positive weight on the second-stage cost.
A strategy is a transport map on the state support together with a
second-stage map on the reachable observations.  All probabilities and costs
are ``fractions.Fraction`` values over Python's unbounded integers, so
evaluating the same strategy twice, in any atom order, yields bit-identical
rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DomainMismatch, EmptySupport, NotNormalized

__all__ = [
    "ProbMass",
    "Instance",
    "TransportMap",
    "SecondStageMap",
    "CostBreakdown",
    "make_prob_mass",
    "make_instance",
    "identity_transport",
    "nearest_int",
    "reachable_observations",
    "optimal_second_stage",
    "evaluate_cost",
    "colliding_pairs",
    "has_collision",
]

_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class ProbMass:
    """Finite distribution over integers with exact, strictly positive probabilities.

    ``atoms`` is strictly ascending in value and the probabilities sum to
    exactly one.  Use :func:`make_prob_mass` to build one from raw pairs.
    """

    atoms: tuple[tuple[int, Fraction], ...]

    def __post_init__(self) -> None:
        if not self.atoms:
            raise EmptySupport("a distribution needs at least one atom")
        values = [v for v, _ in self.atoms]
        if values != sorted(set(values)):
            raise ValueError("atom values must be strictly ascending and distinct")
        for value, prob in self.atoms:
            if not isinstance(prob, Fraction) or prob <= 0:
                raise ValueError(f"atom {value} has non-positive probability {prob!r}")
        total = sum(prob for _, prob in self.atoms)
        if total != 1:
            raise NotNormalized(f"probabilities sum to {total}, expected exactly 1")
        object.__setattr__(self, "_lookup", dict(self.atoms))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.atoms)

    def prob(self, value: int) -> Fraction:
        """Probability of ``value`` (zero if outside the support)."""
        return self._lookup.get(value, Fraction(0))

    def __len__(self) -> int:
        return len(self.atoms)


def make_prob_mass(pairs: Iterable[tuple[int, Fraction | int]]) -> ProbMass:
    """Build a :class:`ProbMass` from (value, probability) pairs.

    Duplicate values are merged by summing their probabilities and
    zero-probability atoms are stripped.  Raises :class:`EmptySupport` if
    nothing remains and :class:`NotNormalized` if the total is not exactly 1.
    """
    merged: dict[int, Fraction] = {}
    for value, prob in pairs:
        if not isinstance(value, int):
            raise TypeError(f"atom value must be an int, got {type(value).__name__}")
        frac = prob if isinstance(prob, Fraction) else Fraction(prob)
        if frac < 0:
            raise ValueError(f"atom {value} has negative probability {frac}")
        merged[value] = merged.get(value, Fraction(0)) + frac
    atoms = tuple((v, p) for v, p in sorted(merged.items()) if p > 0)
    if not atoms:
        raise EmptySupport("no atom has positive probability")
    return ProbMass(atoms)


@dataclass(frozen=True)
class Instance:
    """A discrete Witsenhausen problem: state distribution, noise, and weight."""

    x0: ProbMass
    z: ProbMass
    k: Fraction

    def __post_init__(self) -> None:
        if not isinstance(self.k, Fraction):
            object.__setattr__(self, "k", Fraction(self.k))
        if self.k <= 0:
            raise ValueError(f"second-stage weight must be positive, got {self.k}")


def make_instance(
    x0_pairs: Iterable[tuple[int, Fraction | int]],
    z_pairs: Iterable[tuple[int, Fraction | int]],
    k: Fraction | int,
) -> Instance:
    """Convenience constructor from raw atom pairs and a weight."""
    return Instance(make_prob_mass(x0_pairs), make_prob_mass(z_pairs), Fraction(k))


@dataclass(frozen=True)
class _IntegerMap:
    """Immutable integer-to-integer map stored as ascending (key, value) pairs."""

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        keys = [k for k, _ in self.entries]
        if keys != sorted(set(keys)):
            raise ValueError("map keys must be strictly ascending and distinct")
        object.__setattr__(self, "_lookup", dict(self.entries))

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int]):
        return cls(tuple(sorted(mapping.items())))

    def __getitem__(self, key: int) -> int:
        try:
            return self._lookup[key]
        except KeyError:
            raise DomainMismatch(f"{type(self).__name__} is not defined at {key}") from None

    def __contains__(self, key: int) -> bool:
        return key in self._lookup

    def __len__(self) -> int:
        return len(self.entries)

    def keys(self) -> tuple[int, ...]:
        return tuple(k for k, _ in self.entries)

    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)


class TransportMap(_IntegerMap):
    """First-stage strategy: maps each state value to its transported value."""


class SecondStageMap(_IntegerMap):
    """Second-stage strategy: maps each reachable observation to a control."""


def identity_transport(instance: Instance) -> TransportMap:
    return TransportMap(tuple((x, x) for x in instance.x0.support))


@dataclass(frozen=True)
class CostBreakdown:
    """Exact cost split: transportation cost plus the weighted estimation cost."""

    first_stage: Fraction
    second_stage_weighted: Fraction
    total: Fraction

    def __post_init__(self) -> None:
        if self.first_stage < 0 or self.second_stage_weighted < 0:
            raise ValueError("cost components must be nonnegative")
        if self.total != self.first_stage + self.second_stage_weighted:
            raise ValueError("total must equal the sum of the two stages")


def nearest_int(q: Fraction) -> int:
    """Round to the nearest integer.

    Exact half ties go to the candidate of smaller absolute value, and to the
    negative candidate if the absolute values also tie.  Either tie choice is
    cost-equivalent for the least-squares second stage; the rule only pins a
    deterministic representative.
    """
    floor_q = math.floor(q)
    rem = q - floor_q
    if rem < _HALF:
        return floor_q
    if rem > _HALF:
        return floor_q + 1
    lo, hi = floor_q, floor_q + 1
    if abs(lo) < abs(hi):
        return lo
    if abs(hi) < abs(lo):
        return hi
    return lo


def _require_transport_domain(instance: Instance, transport: TransportMap) -> None:
    if transport.keys() == instance.x0.support:
        return
    keys = set(transport.keys())
    support = set(instance.x0.support)
    missing = sorted(support - keys)
    extra = sorted(keys - support)
    parts = []
    if missing:
        parts.append(f"missing state values {missing}")
    if extra:
        parts.append(f"extra keys {extra} outside the state support")
    raise DomainMismatch("transport map " + " and ".join(parts))


def _observation_weights(
    instance: Instance, transport: TransportMap
) -> dict[int, list[tuple[int, Fraction]]]:
    """For each reachable observation y, the (transported value, weight) pairs."""
    _require_transport_domain(instance, transport)
    weights: dict[int, list[tuple[int, Fraction]]] = {}
    for x, px in instance.x0.atoms:
        t = transport[x]
        for z, pz in instance.z.atoms:
            weights.setdefault(t + z, []).append((t, px * pz))
    return weights


def reachable_observations(instance: Instance, transport: TransportMap) -> tuple[int, ...]:
    """Ascending, deduplicated set of observations the second stage can see."""
    return tuple(sorted(_observation_weights(instance, transport)))


def optimal_second_stage(instance: Instance, transport: TransportMap) -> SecondStageMap:
    """Least-squares-optimal integer second stage for the given transport.

    For each reachable observation the real minimizer is minus the conditional
    expectation of the transported value; the returned entry is that value
    rounded by :func:`nearest_int`.
    """
    weights = _observation_weights(instance, transport)
    entries = []
    for y in sorted(weights):
        s0 = Fraction(0)
        s1 = Fraction(0)
        for t, w in weights[y]:
            s0 += w
            s1 += w * t
        entries.append((y, nearest_int(-s1 / s0)))
    return SecondStageMap(tuple(entries))


def evaluate_cost(
    instance: Instance, transport: TransportMap, second_stage: SecondStageMap
) -> CostBreakdown:
    """Exact cost of a strategy: E[(T(X)-X)^2] + K * E[(T(X)+d(T(X)+Z))^2]."""
    weights = _observation_weights(instance, transport)
    reachable = tuple(sorted(weights))
    if second_stage.keys() != reachable:
        raise DomainMismatch(
            "second-stage map must be defined on exactly the reachable observations "
            f"{list(reachable)}, got {list(second_stage.keys())}"
        )
    first = Fraction(0)
    for x, px in instance.x0.atoms:
        diff = transport[x] - x
        first += px * diff * diff
    second = Fraction(0)
    for y, contribs in weights.items():
        d = second_stage[y]
        for t, w in contribs:
            err = t + d
            second += w * err * err
    weighted = instance.k * second
    return CostBreakdown(first, weighted, first + weighted)


def colliding_pairs(instance: Instance, transport: TransportMap) -> tuple[tuple[int, int], ...]:
    """State-value pairs with different transported values but overlapping observations.

    These are exactly the pairs that force a strictly positive second-stage
    cost: on the shared observation no single control can cancel both
    transported values.
    """
    _require_transport_domain(instance, transport)
    seen: dict[int, list[tuple[int, int]]] = {}
    pairs: set[tuple[int, int]] = set()
    zs = instance.z.support
    for x in instance.x0.support:
        t = transport[x]
        for z in zs:
            y = t + z
            for other_x, other_t in seen.get(y, ()):
                if other_t != t:
                    pairs.add((min(x, other_x), max(x, other_x)))
            seen.setdefault(y, []).append((x, t))
    return tuple(sorted(pairs))


def has_collision(instance: Instance, transport: TransportMap) -> bool:
    return bool(colliding_pairs(instance, transport))
