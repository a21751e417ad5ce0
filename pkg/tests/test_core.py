"""Core data model and exact evaluation."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from witskit import (
    CostBreakdown,
    DomainMismatch,
    EmptySupport,
    NotNormalized,
    ProbMass,
    SecondStageMap,
    TransportMap,
    colliding_pairs,
    evaluate_cost,
    has_collision,
    identity_transport,
    make_instance,
    make_prob_mass,
    nearest_int,
    optimal_second_stage,
    reachable_observations,
)

UNIFORM_2x2 = ([(0, F(1, 2)), (1, F(1, 2))], [(0, F(1, 2)), (1, F(1, 2))])


def uniform(values):
    p = F(1, len(values))
    return [(v, p) for v in values]


# --- make_prob_mass -------------------------------------------------------


def test_make_prob_mass_identity_case():
    mass = make_prob_mass([(0, F(1, 2)), (1, F(1, 2))])
    assert mass.atoms == ((0, F(1, 2)), (1, F(1, 2)))


def test_make_prob_mass_merges_duplicates():
    mass = make_prob_mass([(3, F(1, 3)), (3, F(1, 3)), (5, F(1, 3))])
    assert mass.atoms == ((3, F(2, 3)), (5, F(1, 3)))


def test_make_prob_mass_rejects_unnormalized():
    with pytest.raises(NotNormalized):
        make_prob_mass([(0, F(1, 2)), (1, F(1, 3))])


def test_make_prob_mass_strips_zero_atoms():
    mass = make_prob_mass([(0, F(0)), (1, F(1))])
    assert mass.support == (1,)


def test_make_prob_mass_empty_and_all_zero():
    with pytest.raises(EmptySupport):
        make_prob_mass([])
    with pytest.raises(EmptySupport):
        make_prob_mass([(2, F(0))])


def test_make_prob_mass_rejects_negative():
    with pytest.raises(ValueError):
        make_prob_mass([(0, F(3, 2)), (1, F(-1, 2))])


@given(st.permutations([(0, F(1, 4)), (5, F(1, 4)), (-3, F(1, 4)), (5, F(1, 4))]))
def test_make_prob_mass_order_invariant(pairs):
    mass = make_prob_mass(pairs)
    assert mass.atoms == ((-3, F(1, 4)), (0, F(1, 4)), (5, F(1, 2)))


# --- nearest_int ----------------------------------------------------------


@pytest.mark.parametrize(
    "q,expected",
    [
        (F(0), 0),
        (F(3, 4), 1),
        (F(-3, 4), -1),
        (F(1, 2), 0),      # tie -> smaller absolute value
        (F(-1, 2), 0),
        (F(3, 2), 1),
        (F(-3, 2), -1),
        (F(5, 2), 2),
        (F(-5, 2), -2),
        (F(7), 7),
    ],
)
def test_nearest_int(q, expected):
    assert nearest_int(q) == expected


# --- reachable observations ------------------------------------------------


def test_reachable_disjoint():
    inst = make_instance(uniform([0, 10]), uniform([0, 1]), 1)
    assert reachable_observations(inst, identity_transport(inst)) == (0, 1, 10, 11)


def test_reachable_singleton():
    inst = make_instance([(0, F(1))], [(0, F(1))], 1)
    assert reachable_observations(inst, identity_transport(inst)) == (0,)


def test_reachable_overlap_deduplicated():
    inst = make_instance(*UNIFORM_2x2, 1)
    assert reachable_observations(inst, identity_transport(inst)) == (0, 1, 2)


def test_reachable_requires_total_transport():
    inst = make_instance(uniform([0, 1]), uniform([0]), 1)
    with pytest.raises(DomainMismatch):
        reachable_observations(inst, TransportMap(((0, 0),)))
    with pytest.raises(DomainMismatch):
        reachable_observations(inst, TransportMap(((0, 0), (1, 1), (2, 2))))


# --- optimal second stage ---------------------------------------------------


def test_optimal_second_stage_tie_example():
    inst = make_instance(*UNIFORM_2x2, 1)
    second = optimal_second_stage(inst, identity_transport(inst))
    assert second.entries == ((0, 0), (1, 0), (2, -1))


def test_optimal_second_stage_constant_transport():
    inst = make_instance(uniform([0, 4, 9]), uniform([-1, 2]), 5)
    transport = TransportMap.from_mapping({x: 7 for x in inst.x0.support})
    second = optimal_second_stage(inst, transport)
    assert all(d == -7 for _, d in second.entries)
    assert evaluate_cost(inst, transport, second).second_stage_weighted == 0


def test_optimal_second_stage_single_conditional_atom():
    inst = make_instance([(0, F(1))], uniform([0, 1]), 1)
    second = optimal_second_stage(inst, TransportMap(((0, 5),)))
    assert second.entries == ((5, -5), (6, -5))


def _per_observation_cost(inst, transport, y, d):
    total = F(0)
    for x, px in inst.x0.atoms:
        t = transport[x]
        pz = inst.z.prob(y - t)
        if pz:
            total += px * pz * (t + d) ** 2
    return total


@settings(deadline=None, max_examples=60)
@given(
    st.lists(st.integers(-6, 6), min_size=1, max_size=3, unique=True),
    st.lists(st.integers(-3, 3), min_size=1, max_size=3, unique=True),
    st.lists(st.integers(-3, 3), min_size=3, max_size=3),
)
def test_optimal_second_stage_beats_window(xs, zs, offsets):
    inst = make_instance(uniform(sorted(xs)), uniform(sorted(zs)), 7)
    transport = TransportMap.from_mapping(
        {x: x + offsets[i % len(offsets)] for i, x in enumerate(inst.x0.support)}
    )
    second = optimal_second_stage(inst, transport)
    for y, d in second.entries:
        best = _per_observation_cost(inst, transport, y, d)
        for alt in range(d - 4, d + 5):
            assert best <= _per_observation_cost(inst, transport, y, alt)


# --- evaluate_cost ----------------------------------------------------------


def test_evaluate_cost_collision_free_total_zero():
    inst = make_instance(uniform([0, 10]), uniform([0, 1]), 1)
    t = identity_transport(inst)
    cost = evaluate_cost(inst, t, optimal_second_stage(inst, t))
    assert cost.total == 0


def test_evaluate_cost_ambiguous_observation():
    inst = make_instance(*UNIFORM_2x2, 100)
    t = identity_transport(inst)
    cost = evaluate_cost(inst, t, optimal_second_stage(inst, t))
    assert cost.first_stage == 0
    assert cost.total == 25


def test_evaluate_cost_zero_state():
    inst = make_instance([(0, F(1))], uniform([0, 3]), 12)
    t = identity_transport(inst)
    second = SecondStageMap(((0, 0), (3, 0)))
    assert evaluate_cost(inst, t, second).total == 0


def test_evaluate_cost_requires_exact_delta_domain():
    inst = make_instance(*UNIFORM_2x2, 1)
    t = identity_transport(inst)
    with pytest.raises(DomainMismatch):
        evaluate_cost(inst, t, SecondStageMap(((0, 0), (1, 0))))
    with pytest.raises(DomainMismatch):
        evaluate_cost(inst, t, SecondStageMap(((0, 0), (1, 0), (2, -1), (3, 0))))


def test_cost_breakdown_consistency_enforced():
    with pytest.raises(ValueError):
        CostBreakdown(F(1), F(1), F(3))
    with pytest.raises(ValueError):
        CostBreakdown(F(-1), F(2), F(1))


def test_evaluation_is_reproducible_and_order_independent():
    pairs_x = [(4, F(1, 3)), (-2, F(1, 6)), (0, F(1, 2))]
    pairs_z = [(1, F(2, 5)), (-1, F(3, 5))]
    a = make_instance(pairs_x, pairs_z, F(7, 3))
    b = make_instance(list(reversed(pairs_x)), list(reversed(pairs_z)), F(7, 3))
    t = identity_transport(a)
    ca = evaluate_cost(a, t, optimal_second_stage(a, t))
    cb = evaluate_cost(b, t, optimal_second_stage(b, t))
    assert (ca.first_stage.numerator, ca.first_stage.denominator) == (
        cb.first_stage.numerator,
        cb.first_stage.denominator,
    )
    assert ca == cb
    assert ca == evaluate_cost(a, t, optimal_second_stage(a, t))


# --- invariants -------------------------------------------------------------


@settings(deadline=None, max_examples=60)
@given(
    st.lists(st.integers(-6, 6), min_size=2, max_size=3, unique=True),
    st.lists(st.integers(-2, 2), min_size=1, max_size=2, unique=True),
    st.lists(st.integers(-2, 2), min_size=3, max_size=3),
    st.integers(-5, 5),
)
def test_second_stage_translation_invariance(xs, zs, offsets, c):
    inst = make_instance(uniform(sorted(xs)), uniform(sorted(zs)), 3)
    transport = TransportMap.from_mapping(
        {x: x + offsets[i % len(offsets)] for i, x in enumerate(inst.x0.support)}
    )
    second = optimal_second_stage(inst, transport)
    shifted_t = TransportMap.from_mapping({x: transport[x] + c for x in inst.x0.support})
    shifted_d = SecondStageMap(tuple(sorted((y + c, d - c) for y, d in second.entries)))
    base = evaluate_cost(inst, transport, second)
    moved = evaluate_cost(inst, shifted_t, shifted_d)
    assert base.second_stage_weighted == moved.second_stage_weighted


@settings(deadline=None, max_examples=60)
@given(
    st.lists(st.integers(-5, 5), min_size=2, max_size=3, unique=True),
    st.lists(st.integers(-2, 2), min_size=1, max_size=2, unique=True),
    st.lists(st.integers(-3, 3), min_size=3, max_size=3),
)
def test_zero_second_stage_iff_collision_free(xs, zs, offsets):
    inst = make_instance(uniform(sorted(xs)), uniform(sorted(zs)), 11)
    transport = TransportMap.from_mapping(
        {x: x + offsets[i % len(offsets)] for i, x in enumerate(inst.x0.support)}
    )
    cost = evaluate_cost(inst, transport, optimal_second_stage(inst, transport))
    assert (cost.second_stage_weighted == 0) == (not has_collision(inst, transport))


def test_colliding_pairs_example():
    inst = make_instance(*UNIFORM_2x2, 1)
    assert colliding_pairs(inst, identity_transport(inst)) == ((0, 1),)
    spread = TransportMap.from_mapping({0: 0, 1: 2})
    assert colliding_pairs(inst, spread) == ()
