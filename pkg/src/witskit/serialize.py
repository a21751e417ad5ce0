"""JSON and DIMACS serialization.

Integers travel as decimal strings so arbitrary-precision values survive any
JSON implementation.  Emission is canonical: atoms sorted, fractions reduced
with positive denominators, keys sorted, two-space indent, trailing newline —
parsing a canonical document and re-serializing it is byte-identical.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .core import CostBreakdown, Instance, ProbMass, SecondStageMap, TransportMap, make_prob_mass
from .errors import InputFormatError
from .reduction import Graph, ReductionOutput
from .sidon import SidonSet

__all__ = [
    "canonical_dumps",
    "rational_to_json",
    "rational_from_json",
    "cost_rational_to_json",
    "instance_to_json",
    "instance_from_json",
    "strategy_to_json",
    "strategy_from_json",
    "cost_to_json",
    "sidon_to_json",
    "reduction_sidecar_to_json",
    "parse_dimacs",
    "graph_to_dimacs",
]


def canonical_dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _parse_int(value: Any, what: str) -> int:
    if isinstance(value, bool):
        raise InputFormatError(f"{what} must be an integer, got a boolean")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value, 10)
        except ValueError:
            raise InputFormatError(f"{what} is not a decimal integer: {value!r}") from None
    raise InputFormatError(f"{what} must be an integer or decimal string, got {type(value).__name__}")


def rational_to_json(q: Fraction) -> dict[str, str]:
    return {"num": str(q.numerator), "den": str(q.denominator)}


def rational_from_json(doc: Any, what: str = "rational") -> Fraction:
    if not isinstance(doc, dict) or set(doc) - {"num", "den", "approx"}:
        raise InputFormatError(f"{what} must be an object with 'num' and 'den'")
    num = _parse_int(doc.get("num"), f"{what} numerator")
    den = _parse_int(doc.get("den", 1), f"{what} denominator")
    if den <= 0:
        raise InputFormatError(f"{what} denominator must be positive, got {den}")
    return Fraction(num, den)


def cost_rational_to_json(q: Fraction) -> dict[str, Any]:
    """Exact rational plus a non-authoritative float approximation."""
    doc: dict[str, Any] = rational_to_json(q)
    try:
        doc["approx"] = float(q)
    except OverflowError:
        doc["approx"] = None
    return doc


def _atoms_to_json(mass: ProbMass) -> list[dict[str, Any]]:
    return [{"value": str(v), "prob": rational_to_json(p)} for v, p in mass.atoms]


def _atoms_from_json(doc: Any, what: str) -> ProbMass:
    if not isinstance(doc, list) or not doc:
        raise InputFormatError(f"{what} must be a nonempty list of atoms")
    atoms = []
    for item in doc:
        if not isinstance(item, dict):
            raise InputFormatError(f"each {what} atom must be an object")
        value = _parse_int(item.get("value"), f"{what} atom value")
        prob = rational_from_json(item.get("prob"), f"{what} atom probability")
        atoms.append((value, prob))
    return make_prob_mass(atoms)


def instance_to_json(instance: Instance) -> dict[str, Any]:
    return {
        "x0": _atoms_to_json(instance.x0),
        "z": _atoms_to_json(instance.z),
        "k": rational_to_json(instance.k),
    }


def instance_from_json(doc: Any) -> Instance:
    if not isinstance(doc, dict):
        raise InputFormatError("instance document must be a JSON object")
    for key in ("x0", "z", "k"):
        if key not in doc:
            raise InputFormatError(f"instance document is missing {key!r}")
    x0 = _atoms_from_json(doc["x0"], "x0")
    z = _atoms_from_json(doc["z"], "z")
    k = rational_from_json(doc["k"], "k")
    return Instance(x0, z, k)


def _pairs_to_json(entries: tuple[tuple[int, int], ...]) -> list[list[str]]:
    return [[str(a), str(b)] for a, b in entries]


def _pairs_from_json(doc: Any, what: str) -> tuple[tuple[int, int], ...]:
    if not isinstance(doc, list):
        raise InputFormatError(f"{what} must be a list of [key, value] pairs")
    pairs = []
    for item in doc:
        if not isinstance(item, (list, tuple)) or len(item) != 2:
            raise InputFormatError(f"each {what} entry must be a [key, value] pair")
        pairs.append((_parse_int(item[0], f"{what} key"), _parse_int(item[1], f"{what} value")))
    return tuple(sorted(pairs))


def strategy_to_json(transport: TransportMap, second: SecondStageMap) -> dict[str, Any]:
    return {"t": _pairs_to_json(transport.entries), "delta": _pairs_to_json(second.entries)}


def strategy_from_json(doc: Any) -> tuple[TransportMap, SecondStageMap]:
    if not isinstance(doc, dict) or "t" not in doc or "delta" not in doc:
        raise InputFormatError("strategy document must contain 't' and 'delta'")
    try:
        transport = TransportMap(_pairs_from_json(doc["t"], "t"))
        second = SecondStageMap(_pairs_from_json(doc["delta"], "delta"))
    except ValueError as exc:
        raise InputFormatError(str(exc)) from None
    return transport, second


def cost_to_json(cost: CostBreakdown) -> dict[str, Any]:
    return {
        "first_stage": cost_rational_to_json(cost.first_stage),
        "second_stage_weighted": cost_rational_to_json(cost.second_stage_weighted),
        "total": cost_rational_to_json(cost.total),
    }


def sidon_to_json(s: SidonSet) -> list[str]:
    return [str(v) for v in s.elements]


def reduction_sidecar_to_json(r: ReductionOutput) -> dict[str, Any]:
    return {
        "x_values": [str(x) for x in r.x_values],
        "scale": str(r.scale),
        "sidon_base": sidon_to_json(r.sidon_base),
        "n": r.graph.n,
        "edges": [[i, j] for i, j in r.graph.edge_list()],
    }


def parse_dimacs(text: str) -> Graph:
    """Parse an edge-list graph: header ``p edge <n> <m>``, lines ``e <i> <j>``.

    Comment lines starting with ``c`` are ignored, as is a declared edge count
    that disagrees with the actual number of (deduplicated) edge lines.
    """
    n: int | None = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if n is not None:
                raise InputFormatError(f"line {lineno}: duplicate problem line")
            if len(fields) != 4 or fields[1] != "edge":
                raise InputFormatError(f"line {lineno}: expected 'p edge <n> <m>'")
            n = _parse_int(fields[2], "vertex count")
            _parse_int(fields[3], "edge count")
            if n < 1:
                raise InputFormatError(f"line {lineno}: vertex count must be positive")
        elif fields[0] == "e":
            if n is None:
                raise InputFormatError(f"line {lineno}: edge before the problem line")
            if len(fields) != 3:
                raise InputFormatError(f"line {lineno}: expected 'e <i> <j>'")
            i = _parse_int(fields[1], "edge endpoint")
            j = _parse_int(fields[2], "edge endpoint")
            edges.append((i, j))
        else:
            raise InputFormatError(f"line {lineno}: unknown record type {fields[0]!r}")
    if n is None:
        raise InputFormatError("missing 'p edge <n> <m>' problem line")
    try:
        return Graph.from_edges(n, edges)
    except ValueError as exc:
        raise InputFormatError(str(exc)) from None


def graph_to_dimacs(graph: Graph) -> str:
    lines = [f"p edge {graph.n} {len(graph.edges)}"]
    lines.extend(f"e {i} {j}" for i, j in graph.edge_list())
    return "\n".join(lines) + "\n"
