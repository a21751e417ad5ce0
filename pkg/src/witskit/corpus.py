"""Seeded random instance families for ratio checks and benchmarks.

The default family draws small state supports from [-20, 20] with exchangeable
random rational probabilities, noise supports from [-5, 5] with uniform
probabilities, and a weight from {1, 10, n**5 + 1} — covering both the
collision-heavy regime (large weight punishes any observation overlap) and the
cheap-second-stage regime.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .core import Instance, ProbMass

__all__ = ["random_instance", "describe_instance"]

_WEIGHT_RANGE = 6


def _random_simplex(rng: random.Random, size: int) -> list[Fraction]:
    weights = [rng.randint(1, _WEIGHT_RANGE) for _ in range(size)]
    total = sum(weights)
    return [Fraction(w, total) for w in weights]


def random_instance(
    rng: random.Random,
    *,
    min_support: int = 2,
    max_support: int = 5,
    min_noise: int = 1,
    max_noise: int = 3,
    x_range: tuple[int, int] = (-20, 20),
    z_range: tuple[int, int] = (-5, 5),
    uniform_probs: bool = False,
) -> Instance:
    """Draw one instance; identical rng state gives an identical instance."""
    n = rng.randint(min_support, max_support)
    m = rng.randint(min_noise, max_noise)
    xs = sorted(rng.sample(range(x_range[0], x_range[1] + 1), n))
    zs = sorted(rng.sample(range(z_range[0], z_range[1] + 1), m))
    if uniform_probs:
        probs = [Fraction(1, n)] * n
    else:
        probs = _random_simplex(rng, n)
    x0 = ProbMass(tuple(zip(xs, probs)))
    z = ProbMass(tuple((v, Fraction(1, m)) for v in zs))
    k = rng.choice((Fraction(1), Fraction(10), Fraction(n**5 + 1)))
    return Instance(x0, z, k)


def describe_instance(instance: Instance) -> str:
    return f"n{len(instance.x0)}-m{len(instance.z)}-k{instance.k}"
