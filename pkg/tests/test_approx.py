"""Interpolation-based approximate solver."""

import random
from fractions import Fraction as F

import pytest

from witskit import (
    colliding_pairs,
    collision_free_transport,
    cost_ratio_bound,
    evaluate_cost,
    has_collision,
    identity_transport,
    make_instance,
    make_prob_mass,
    optimal_second_stage,
    rank_atoms,
)
from witskit import approx
from witskit.corpus import random_instance


def uniform(values):
    p = F(1, len(values))
    return [(v, p) for v in values]


def corpus(count=40, seed=1234):
    rng = random.Random(seed)
    return [random_instance(rng) for _ in range(count)]


# --- rank_atoms ---------------------------------------------------------------


def test_rank_ties_broken_by_value():
    ranked = rank_atoms(make_prob_mass([(0, F(1, 2)), (1, F(1, 2))]))
    assert [v for v, _ in ranked] == [0, 1]


def test_rank_by_probability():
    ranked = rank_atoms(make_prob_mass([(5, F(1, 4)), (2, F(3, 4))]))
    assert [v for v, _ in ranked] == [2, 5]


def test_rank_all_tied():
    ranked = rank_atoms(make_prob_mass(uniform([1, 2, 3])))
    assert [v for v, _ in ranked] == [1, 2, 3]


# --- collision-free transport ---------------------------------------------------


def test_greedy_relocation_example():
    inst = make_instance(uniform([0, 1]), uniform([0, 1]), 100)
    transport = collision_free_transport(inst, 1)
    # the forbidden values around the fixed atom are {-1, 0, 1}
    assert transport.as_dict() == {0: 0, 1: 2}


def test_k_equal_n_is_identity():
    inst = make_instance(uniform([3, 7, 8]), uniform([-1, 0]), 2)
    assert collision_free_transport(inst, 3).entries == identity_transport(inst).entries


def test_k_out_of_range():
    inst = make_instance(uniform([0, 1]), uniform([0]), 1)
    with pytest.raises(ValueError):
        collision_free_transport(inst, 3)


def test_k_zero_is_fully_collision_free():
    for inst in corpus():
        transport = collision_free_transport(inst, 0)
        assert not has_collision(inst, transport)


def test_displacement_bound_and_prefix_collisions():
    for inst in corpus():
        bound = len(inst.x0) * len(inst.z) ** 2
        ranked_values = [v for v, _ in rank_atoms(inst.x0)]
        for k in range(len(inst.x0) + 1):
            transport = collision_free_transport(inst, k)
            assert all(abs(transport[x] - x) <= bound for x in inst.x0.support)
            prefix = set(ranked_values[:k])
            for a, b in colliding_pairs(inst, transport):
                assert a in prefix and b in prefix


# --- full sweep -------------------------------------------------------------------


def test_sweep_example_prefers_larger_k_on_tie():
    inst = make_instance(uniform([0, 1]), uniform([0, 1]), 100)
    result = approx.solve(inst)
    assert result.cost.total == F(1, 2)
    assert result.best_k == 1
    assert result.strategy[0].as_dict() == {0: 0, 1: 2}
    assert dict(result.per_k_costs) == {0: F(1, 2), 1: F(1, 2), 2: F(25)}


def test_sweep_identity_optimal_when_no_collisions():
    inst = make_instance(uniform([0, 10]), [(0, F(1))], 99)
    result = approx.solve(inst)
    assert result.cost.total == 0
    assert result.best_k == 2


def test_sweep_singleton_state():
    inst = make_instance([(4, F(1))], uniform([0, 1]), 5)
    assert approx.solve(inst).cost.total == 0


def test_per_k_invariants():
    for inst in corpus(count=25):
        result = approx.solve(inst)
        totals = dict(result.per_k_costs)
        assert len(totals) == len(inst.x0) + 1
        assert result.cost.total == min(totals.values())
        identity = identity_transport(inst)
        identity_cost = evaluate_cost(
            inst, identity, optimal_second_stage(inst, identity)
        ).total
        assert totals[len(inst.x0)] == identity_cost
        assert result.cost.total <= identity_cost


def test_solver_is_deterministic():
    inst = make_instance(uniform([-3, 0, 4, 5]), uniform([-1, 1]), 17)
    a = approx.solve(inst)
    b = approx.solve(inst)
    assert a == b


def test_ratio_bound_value():
    inst = make_instance(uniform([0, 1, 2]), uniform([0, 1]), 1)
    assert cost_ratio_bound(inst) == 27 * 16
