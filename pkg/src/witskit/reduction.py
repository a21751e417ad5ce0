"""Graph-to-instance reduction plus brute-force coloring oracles.

The reduction plants a scaled order-4 Sidon set as the state support and puts
the noise uniformly on the half-differences of adjacent state values.  With
the second-stage weight above n**5, cheap strategies must have zero
second-stage cost, which makes the optimal Witsenhausen cost of the reduced
instance equal to the graph's l2-chromatic number: the minimum of
(1/n) * sum(gamma(i)**2) over proper integer colorings gamma.

The oracles here are exhaustive searches meant for desk-scale graphs; they are
the ground truth the rest of the toolkit is tested against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .core import Instance, ProbMass, SecondStageMap, TransportMap, optimal_second_stage
from .errors import CostTooHigh, EmptyEdgeSet, ImproperColoring, TooLarge
from .sidon import SidonSet, construct_sidon

__all__ = [
    "Graph",
    "Coloring",
    "ReductionOutput",
    "graph_to_instance",
    "l2_chromatic_bruteforce",
    "chromatic_bruteforce",
    "check_chromatic_sandwich",
    "coloring_to_strategy",
    "strategy_to_coloring",
    "DEFAULT_ORACLE_LIMIT",
]

DEFAULT_ORACLE_LIMIT = 6


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 1..n, stored as (i, j) pairs with i < j."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("graph needs at least one vertex")
        for i, j in self.edges:
            if i == j:
                raise ValueError(f"self-loop at vertex {i} is not allowed")
            if not (1 <= i < j <= self.n):
                raise ValueError(f"edge ({i}, {j}) is not an ordered pair within 1..{self.n}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        normalized = frozenset((min(i, j), max(i, j)) for i, j in edges)
        return cls(n, normalized)

    def edge_list(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.edges))

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def neighbors_below(self) -> list[list[int]]:
        """For each vertex v (index v-1), its neighbors with smaller index."""
        below: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in self.edges:
            below[j - 1].append(i)
        return below


@dataclass(frozen=True)
class Coloring:
    """Integer vertex coloring; construction rejects improper assignments."""

    graph: Graph
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.graph.n:
            raise ValueError(
                f"coloring has {len(self.values)} values for {self.graph.n} vertices"
            )
        for i, j in self.graph.edges:
            if self.values[i - 1] == self.values[j - 1]:
                raise ImproperColoring(
                    f"vertices {i} and {j} share an edge but both have color "
                    f"{self.values[i - 1]}"
                )

    def gamma(self, vertex: int) -> int:
        return self.values[vertex - 1]

    @property
    def score(self) -> Fraction:
        """Mean squared color value, the quantity the l2 oracle minimizes."""
        return Fraction(sum(v * v for v in self.values), self.graph.n)


@dataclass(frozen=True)
class ReductionOutput:
    """A reduced instance together with the data needed to map strategies back."""

    graph: Graph
    instance: Instance
    x_values: tuple[int, ...]
    scale: int
    sidon_base: SidonSet


def _ceil_n_pow_3_2(n: int) -> int:
    """Ceiling of n**1.5, computed exactly via the integer square root of n**3."""
    cube = n**3
    root = math.isqrt(cube)
    return root if root * root == cube else root + 1


def _reduction_weight(n: int) -> Fraction:
    """Second-stage weight of a reduced instance: the smallest integer above n**5."""
    return Fraction(n**5 + 1)


def graph_to_instance(graph: Graph) -> ReductionOutput:
    """Build the Witsenhausen instance whose optimal cost is the graph's l2-chromatic number.

    State values are x_i = l * y_i for a k-element order-4 Sidon set y and
    scale l = 4 * (ceil(n**1.5) + 1); the noise is uniform on the
    half-differences (x_i - x_j) / 2 over both orientations of each edge, and
    the second-stage weight is n**5 + 1.
    """
    if not graph.edges:
        raise EmptyEdgeSet("the reduction needs at least one edge to define the noise")
    n = graph.n
    base = construct_sidon(n)
    scale = 4 * (_ceil_n_pow_3_2(n) + 1)
    x_values = tuple(scale * y for y in base.elements)

    halves = set()
    for i, j in graph.edges:
        d = x_values[i - 1] - x_values[j - 1]
        half, rem = divmod(d, 2)
        if rem:  # scale is divisible by 4, so differences are always even
            raise RuntimeError(f"odd state difference {d} in reduction")
        halves.add(half)
        halves.add(-half)
    if len(halves) != 2 * len(graph.edges):
        raise RuntimeError(
            "duplicate half-differences across distinct edges; "
            "the scaled base has lost the order-4 property"
        )

    x0 = ProbMass(tuple((x, Fraction(1, n)) for x in sorted(x_values)))
    z = ProbMass(tuple((v, Fraction(1, len(halves))) for v in sorted(halves)))
    instance = Instance(x0, z, _reduction_weight(n))
    return ReductionOutput(graph, instance, x_values, scale, base)


def _check_limit(graph: Graph, limit: int) -> None:
    if graph.n > limit:
        raise TooLarge(f"graph has {graph.n} vertices, oracle limit is {limit}")


def l2_chromatic_bruteforce(
    graph: Graph, limit: int = DEFAULT_ORACLE_LIMIT
) -> tuple[Fraction, Coloring]:
    """Exact minimum of the mean squared color over proper integer colorings.

    Colors are searched in the window [-ceil(n/2), ceil(n/2)], which always
    contains an optimal coloring: an optimal coloring uses every value in the
    minimal interval spanning its range (otherwise collapsing the gap would
    lower the score), so at most n consecutive values are used, and the best
    integer translate of those values straddles zero.  The witness is the
    lexicographically smallest optimal vector.
    """
    _check_limit(graph, limit)
    n = graph.n
    w = (n + 1) // 2
    below = graph.neighbors_below()
    best_score: int | None = None
    best: tuple[int, ...] | None = None
    values = list(range(-w, w + 1))
    assignment = [0] * n

    def descend(vertex: int, partial: int) -> None:
        nonlocal best_score, best
        if vertex == n:
            if best_score is None or partial < best_score:
                best_score = partial
                best = tuple(assignment)
            return
        for value in values:
            if best_score is not None:
                bound = partial + value * value
                if bound > best_score or (bound == best_score and best is not None):
                    if value >= 0:
                        break  # squares only grow from here
                    continue
            ok = True
            for u in below[vertex]:
                if assignment[u - 1] == value:
                    ok = False
                    break
            if not ok:
                continue
            assignment[vertex] = value
            descend(vertex + 1, partial + value * value)
        return

    descend(0, 0)
    assert best_score is not None and best is not None
    return Fraction(best_score, n), Coloring(graph, best)


def chromatic_bruteforce(graph: Graph, limit: int = DEFAULT_ORACLE_LIMIT) -> int:
    """Chromatic number by exhaustive search over color counts 1..n."""
    _check_limit(graph, limit)
    n = graph.n
    below = graph.neighbors_below()
    assignment = [0] * n

    def colorable(vertex: int, colors: int) -> bool:
        if vertex == n:
            return True
        # using only colors seen so far plus one fresh color cuts symmetric branches
        used = max(assignment[:vertex], default=0)
        for c in range(1, min(colors, used + 1) + 1):
            if all(assignment[u - 1] != c for u in below[vertex]):
                assignment[vertex] = c
                if colorable(vertex + 1, colors):
                    return True
        return False

    for colors in range(1, n + 1):
        if colorable(0, colors):
            return colors
    raise AssertionError("n colors always suffice")


def check_chromatic_sandwich(graph: Graph, limit: int = DEFAULT_ORACLE_LIMIT) -> bool:
    """Exact check that kappa**2 >= gamma_star >= (kappa - 2)**3 / (12 n)."""
    kappa = chromatic_bruteforce(graph, limit)
    gamma_star, _ = l2_chromatic_bruteforce(graph, limit)
    return kappa * kappa >= gamma_star and 12 * graph.n * gamma_star >= (kappa - 2) ** 3


def coloring_to_strategy(
    reduction: ReductionOutput, coloring: Coloring
) -> tuple[TransportMap, SecondStageMap]:
    """Turn a proper coloring into a strategy on the reduced instance.

    Each state value moves by its vertex's color; the induced second stage is
    then exact (zero second-stage cost) and the total equals the coloring's
    score.
    """
    graph = reduction.graph
    if coloring.graph.n != graph.n or len(coloring.values) != graph.n:
        raise ValueError("coloring does not match the reduction's graph size")
    for i, j in graph.edges:
        if coloring.values[i - 1] == coloring.values[j - 1]:
            raise ImproperColoring(
                f"vertices {i} and {j} share an edge but both have color "
                f"{coloring.values[i - 1]}"
            )
    n = graph.n
    if coloring.score > n * n:
        raise ValueError(
            f"coloring score {coloring.score} exceeds {n * n}; the zero-second-stage "
            "argument needs score <= n**2"
        )
    transport = TransportMap.from_mapping(
        {x: x + coloring.values[i] for i, x in enumerate(reduction.x_values)}
    )
    return transport, optimal_second_stage(reduction.instance, transport)


def strategy_to_coloring(reduction: ReductionOutput, transport: TransportMap) -> Coloring:
    """Read a coloring off a cheap transport map: gamma(i) = T(x_i) - x_i.

    Requires the transportation cost alone to stay within n**2 (CostTooHigh
    otherwise).  Properness of the result is enforced by the Coloring
    constructor: a strategy whose second-stage cost pushes the total over the
    n**2 budget surfaces here as an ImproperColoring.
    """
    values = tuple(transport[x] - x for x in reduction.x_values)
    n = reduction.graph.n
    first_stage = Fraction(sum(v * v for v in values), n)
    if first_stage > n * n:
        raise CostTooHigh(
            f"transportation cost {first_stage} exceeds {n * n}; "
            "the coloring argument does not apply"
        )
    return Coloring(reduction.graph, values)
