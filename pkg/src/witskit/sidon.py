"""Sidon sets of a given order: brute-force checking and greedy construction.

A set is Sidon of order p when all sums of p elements (with repetition
allowed) are pairwise distinct.  The greedy construction below extends a set
of size j by scanning the interval (20*j**8, 20*(j+1)**8] in ascending order
and taking the first element that preserves the order-4 property; a counting
argument guarantees such an element always exists, so the result has k
elements bounded by 20*k**8.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable

__all__ = ["SidonSet", "is_sidon", "construct_sidon"]


def is_sidon(elements: Iterable[int], order: int) -> bool:
    """True iff all size-``order`` multiset sums over ``elements`` are distinct.

    Runs the definition directly: enumerate every multiset of the given size
    and watch for a repeated sum.  The empty set is vacuously Sidon.
    """
    if order < 1:
        raise ValueError(f"order must be at least 1, got {order}")
    values = tuple(sorted(elements))
    if len(values) != len(set(values)):
        raise ValueError("elements must be distinct")
    seen: set[int] = set()
    for combo in combinations_with_replacement(values, order):
        total = sum(combo)
        if total in seen:
            return False
        seen.add(total)
    return True


@dataclass(frozen=True)
class SidonSet:
    """A verified Sidon set: ascending positive elements plus their order."""

    elements: tuple[int, ...]
    order: int

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ValueError("order must be at least 1")
        if list(self.elements) != sorted(set(self.elements)):
            raise ValueError("elements must be strictly ascending and distinct")
        if self.elements and self.elements[0] < 1:
            raise ValueError("elements must be positive")
        if not is_sidon(self.elements, self.order):
            raise ValueError(f"not a Sidon set of order {self.order}")

    def __len__(self) -> int:
        return len(self.elements)


@lru_cache(maxsize=None)
def construct_sidon(k: int) -> SidonSet:
    """Greedily construct an order-4 Sidon set with ``k`` elements, all <= 20*k**8.

    Deterministic, and incremental: the result for k is a prefix of the result
    for k+1.
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    elements: list[int] = [1]
    while len(elements) < k:
        j = len(elements)
        lo, hi = 20 * j**8, 20 * (j + 1) ** 8
        for candidate in range(lo + 1, hi + 1):
            if is_sidon(tuple(elements) + (candidate,), 4):
                elements.append(candidate)
                break
        else:  # the counting bound says this cannot happen
            raise RuntimeError(f"no order-4 extension found in ({lo}, {hi}]")
    return SidonSet(tuple(elements), 4)
