# Copyright (c) planarint contributors. All rights reserved.
# Licensed under the MIT License.
"""
Tests for single-pair interdiction.
"""
import time

import attrs
import pytest
from hamcrest import assert_that, empty, has_length, is_, is_not, less_than_or_equal_to
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

import dual_builder
import instance_gen
import oracle
import planar_core
import planarint_utils as utils
import st_interdiction
from planarint_utils import INF
from st_interdiction import ARCS_ONLY, WITH_VERTICES, ArcClass

from .instance_test_client import constants, utils as test_utils

EQUIVALENCE = settings(
    max_examples=200,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)


def _layered(net, budget, clip_parity=False):
    s, t = net.single_pair()
    path = planar_core.st_path(net, s, t)
    dual = dual_builder.build_dual(net, planar_core.trace_faces(net))
    parity = dual_builder.assign_parity(dual, net, path)
    return dual, st_interdiction.build_layered_graph(dual, parity, budget, clip_parity)


@pytest.mark.parametrize("budget, expected", [(0, 10), (1, 7), (2, 5), (3, 2), (4, 0)])
def test_reduced_cut_value(budget, expected):
    net = test_utils.load_network(constants.THREE_PARALLEL)
    assert_that(st_interdiction.reduced_cut_value(net, [0, 1, 2], budget), is_(expected))


def test_knapsack_forced_items():
    assert_that(st_interdiction.knapsack_reduced_length([(INF, 2), (4, 1)], 1), is_(INF))
    assert_that(st_interdiction.knapsack_reduced_length([(INF, 2), (4, 1)], 3), is_(0))
    assert_that(st_interdiction.knapsack_reduced_length([(INF, INF)], 9), is_(INF))
    assert_that(st_interdiction.knapsack_reduced_length([(0, 1), (3, INF)], 5), is_(3))


def test_layered_graph_shape():
    _dual, layered = _layered(test_utils.load_network(constants.THREE_PARALLEL), 2)

    assert_that(layered.parity_bound, is_(1))
    assert_that(layered.num_nodes, is_(3 * 3 * 3))
    assert_that(list(layered.nodes()), has_length(layered.num_nodes))


def test_layered_arcs_from_a_node():
    dual, layered = _layered(test_utils.load_network(constants.THREE_PARALLEL), 2)
    forward = dual.arcs[dual.forward_of[1]]
    arcs = layered.arcs_from((forward.tail, 2, 0))
    classes = [a.arc_class for a in arcs]

    assert_that(classes.count(ArcClass.WAIT), is_(1))
    waiting = [a for a in arcs if a.arc_class is ArcClass.WAIT][0]
    assert_that(waiting.head, is_((forward.tail, 1, 0)))
    removed = [a for a in arcs if a.dual_arc == dual.forward_of[1] and a.length == 0]
    assert_that([a.head[1] for a in removed], is_([1]))
    exhausted = [a.arc_class for a in layered.arcs_from((forward.tail, 0, 0))]
    assert_that(ArcClass.WAIT in exhausted, is_(False))


def test_clipped_parity_range():
    net = test_utils.load_network(constants.DIAMOND)
    _dual, full = _layered(net, 1)
    _dual, clipped = _layered(net, 1, clip_parity=True)

    assert_that(full.parity_bound, is_(2))
    assert_that(clipped.parity_bound, is_(1))


def test_closed_walk_from_every_face():
    net = test_utils.load_network(constants.THREE_PARALLEL)
    dual, layered = _layered(net, 2)
    for start in range(dual.num_nodes):
        walk = st_interdiction.solve_closed_walk(layered, start)
        assert_that(walk.values[0], is_(5))
        assert_that(walk.values[2], is_(10))


def test_closed_walk_follows_layered_arcs():
    dual, layered = _layered(test_utils.load_network(constants.DIAMOND), 2)
    for start in range(dual.num_nodes):
        walk = st_interdiction.solve_closed_walk(layered, start)
        for head, (tail, arc, removed) in walk.pred.items():
            arcs = layered.arcs_from(tail)
            used = [a for a in arcs if a.head == head and a.dual_arc == (None if arc < 0 else arc)]
            assert_that(used, is_not(empty()))
            classes = {a.arc_class.name.startswith("REMOVE") for a in used}
            assert_that(removed in classes, is_(True))


@pytest.mark.parametrize("engine", st_interdiction.ENGINES)
def test_equal_walks_resolve_the_same_way(engine):
    net = instance_gen.grid(3, 4, seed=7)
    runs = [
        st_interdiction.solve_st_interdiction(net, 3, engine=engine, prune=False) for _ in range(3)
    ]
    witnesses = [run.witness for run in runs]

    assert_that(witnesses[1], is_(witnesses[0]))
    assert_that(witnesses[2], is_(witnesses[0]))
    assert_that(runs[1].interdiction, is_(runs[0].interdiction))


@pytest.mark.parametrize("engine", st_interdiction.ENGINES)
def test_parallel_arcs_profile(engine):
    net = test_utils.load_network(constants.THREE_PARALLEL)
    outcome = st_interdiction.solve_st_interdiction(net, 2, engine=engine)

    assert_that(outcome.nu_profile, is_((10, 7, 5)))
    assert_that(outcome.interdiction.cost, is_(less_than_or_equal_to(2)))
    removed = oracle.max_flow_value(net, outcome.interdiction.arcs)
    assert_that(removed, is_(5))
    assert_that(net.vertex_ids(outcome.cut_side), is_([0]))


def test_diamond():
    net = test_utils.load_network(constants.DIAMOND)
    one = st_interdiction.solve_st_interdiction(net, 1)
    two = st_interdiction.solve_st_interdiction(net, 2, profile_sets=True)

    assert_that(one.nu_profile, is_((3, 1)))
    assert_that(one.interdiction.to_json(net), is_({"arcs": [1], "vertices": [], "cost": 1}))
    assert_that(two.nu_profile, is_((3, 1, 0)))
    assert_that(two.interdiction.cost, is_(less_than_or_equal_to(2)))
    assert_that(oracle.max_flow_value(net, two.interdiction.arcs), is_(0))
    assert_that(two.profile_sets, has_length(3))
    assert_that(two.profile_sets[0].arcs, is_(()))


def test_witness_matches_the_interdiction():
    net = test_utils.load_network(constants.DIAMOND)
    outcome = st_interdiction.solve_st_interdiction(net, 1, prune=False)
    removed = {step.primal for step in outcome.witness if step.removed}

    assert_that(removed, is_(set(outcome.interdiction.arcs)))
    assert_that(outcome.witness_length, is_(1))
    data = outcome.to_json(net)
    assert_that(data["witness"]["length"], is_(1))
    assert_that(data["cut"]["side"], is_([0, 1]))


def test_vertex_interdiction():
    net = test_utils.load_network(constants.CHAIN)
    outcome = st_interdiction.solve_st_interdiction(net, 1, WITH_VERTICES)

    assert_that(outcome.nu_profile, is_((5, 0)))
    assert_that(outcome.interdiction.to_json(net), is_({"arcs": [], "vertices": [1], "cost": 1}))


def test_arcs_only_ignores_vertex_costs():
    net = test_utils.load_network(constants.CHAIN)
    outcome = st_interdiction.solve_st_interdiction(net, 1, ARCS_ONLY)
    assert_that(outcome.nu_profile, is_((5, 5)))


def test_vertex_capacities():
    net = test_utils.load_network(constants.CHAIN)
    outcome = st_interdiction.solve_st_interdiction(net, 0, use_vertex_capacities=True)
    assert_that(outcome.nu_profile, is_((2,)))


def test_unremovable_arcs_keep_max_flow():
    net = test_utils.unremovable(test_utils.load_network(constants.DIAMOND))
    outcome = st_interdiction.solve_st_interdiction(net, 4)
    assert_that(outcome.nu_profile, is_((3, 3, 3, 3, 3)))


def test_unreachable_sink_gives_zero_flow():
    net = attrs.evolve(test_utils.load_network(constants.DIAMOND), sources=[3], sinks=[0])
    outcome = st_interdiction.solve_st_interdiction(net, 2)

    assert_that(outcome.nu_profile, is_((0, 0, 0)))
    assert_that(outcome.interdiction.cost, is_(0))


def test_rejected_instances():
    net = test_utils.load_network(constants.DIAMOND)
    with pytest.raises(utils.TerminalRemovable):
        st_interdiction.solve_st_interdiction(test_utils.with_vertex_cost(net, 3, 1), 1)
    lower = attrs.evolve(net, arcs=[attrs.evolve(net.arcs[0], lower=1)] + list(net.arcs[1:]))
    with pytest.raises(utils.UnsupportedInstance):
        st_interdiction.solve_st_interdiction(lower, 1)
    with pytest.raises(utils.InstanceError):
        st_interdiction.solve_st_interdiction(net, 1, "everything")
    with pytest.raises(utils.InstanceError):
        st_interdiction.solve_st_interdiction(net, -1)


def test_threshold_reduction():
    net = test_utils.load_network(constants.THREE_PARALLEL)
    reduced = st_interdiction.threshold_reduction(net, 5)

    assert_that(planar_core.validate(reduced).ok, is_(True))
    assert_that(oracle.max_flow_value(reduced), is_(5))
    assert_that(st_interdiction.single_pair_security(reduced, 2)[0], is_(None))
    found, outcome = st_interdiction.single_pair_security(
        st_interdiction.threshold_reduction(net, 6), 2
    )
    assert_that(found, is_(2))
    assert_that(outcome.nu_profile[-1], is_(5))
    assert_that(
        st_interdiction.single_pair_security(st_interdiction.threshold_reduction(net, 0), 2)[0],
        is_(None),
    )


@pytest.mark.parametrize(
    "budget, threshold, expected",
    [(2, 5, True), (2, 4, False), (1, 6, False), (0, 10, True), (0, 9, False)],
)
def test_decide_threshold(budget, threshold, expected):
    net = test_utils.load_network(constants.THREE_PARALLEL)
    assert_that(st_interdiction.decide_threshold(net, budget, threshold), is_(expected))


def test_single_pair_security():
    net = test_utils.load_network(constants.THREE_PARALLEL)
    found, outcome = st_interdiction.single_pair_security(net, 3)

    assert_that(found, is_(1))
    assert_that(outcome.interdiction.to_json(net)["arcs"], is_([1]))


@EQUIVALENCE
@given(
    seed=st.integers(min_value=0, max_value=100_000),
    n=st.integers(min_value=3, max_value=7),
    budget=st.integers(min_value=0, max_value=4),
)
def test_matches_oracle_arcs_only(seed, n, budget):
    options = instance_gen.GenOptions(max_edges=12)
    net = instance_gen.random_planar(n, seed, options)
    outcome = st_interdiction.solve_st_interdiction(net, budget)
    expected = oracle.interdict_exhaustive(net, budget)

    assert_that(list(outcome.nu_profile), is_(list(expected.nu_profile)))
    assert_that(outcome.interdiction.cost, is_(less_than_or_equal_to(budget)))
    assert_that(list(outcome.nu_profile), is_(sorted(outcome.nu_profile, reverse=True)))
    left = oracle.max_flow_value(net, outcome.interdiction.arcs)
    assert_that(left, is_(expected.nu_profile[-1]))


@EQUIVALENCE
@given(
    seed=st.integers(min_value=0, max_value=100_000),
    n=st.integers(min_value=3, max_value=7),
    budget=st.integers(min_value=0, max_value=3),
)
def test_matches_oracle_with_vertices(seed, n, budget):
    options = instance_gen.GenOptions(vertex_costs=True, max_edges=10)
    net = instance_gen.random_planar(n, seed, options)
    outcome = st_interdiction.solve_st_interdiction(net, budget, WITH_VERTICES)
    expected = oracle.interdict_exhaustive(net, budget, WITH_VERTICES)

    assert_that(list(outcome.nu_profile), is_(list(expected.nu_profile)))
    left = oracle.max_flow_value(
        net, outcome.interdiction.arcs, outcome.interdiction.vertices
    )
    assert_that(left, is_(expected.nu_profile[-1]))


@EQUIVALENCE
@given(
    seed=st.integers(min_value=0, max_value=100_000),
    n=st.integers(min_value=3, max_value=7),
    budget=st.integers(min_value=0, max_value=3),
)
def test_matches_oracle_with_vertex_capacities(seed, n, budget):
    options = instance_gen.GenOptions(vertex_capacities=True, max_edges=12)
    net = instance_gen.random_planar(n, seed, options)
    outcome = st_interdiction.solve_st_interdiction(net, budget, use_vertex_capacities=True)
    expected = oracle.interdict_exhaustive(net, budget, use_vertex_capacities=True)

    assert_that(list(outcome.nu_profile), is_(list(expected.nu_profile)))


@EQUIVALENCE
@given(
    seed=st.integers(min_value=0, max_value=100_000),
    n=st.integers(min_value=3, max_value=7),
    budget=st.integers(min_value=0, max_value=3),
)
def test_matches_oracle_with_vertex_costs_and_capacities(seed, n, budget):
    options = instance_gen.GenOptions(vertex_costs=True, vertex_capacities=True, max_edges=10)
    net = instance_gen.random_planar(n, seed, options)
    outcome = st_interdiction.solve_st_interdiction(
        net, budget, WITH_VERTICES, use_vertex_capacities=True
    )
    expected = oracle.interdict_exhaustive(net, budget, WITH_VERTICES, use_vertex_capacities=True)

    assert_that(list(outcome.nu_profile), is_(list(expected.nu_profile)))
    left = oracle.max_flow_value(
        net, outcome.interdiction.arcs, outcome.interdiction.vertices, use_vertex_capacities=True
    )
    assert_that(left, is_(expected.nu_profile[-1]))


@EQUIVALENCE
@given(
    seed=st.integers(min_value=0, max_value=100_000),
    n=st.integers(min_value=3, max_value=8),
    budget=st.integers(min_value=0, max_value=4),
)
def test_clipped_parity_gives_the_same_profile(seed, n, budget):
    net = instance_gen.random_planar(n, seed, instance_gen.GenOptions(max_edges=14))
    full = st_interdiction.solve_st_interdiction(net, budget, prune=False)
    clipped = st_interdiction.solve_st_interdiction(net, budget, prune=False, clip_parity=True)

    assert_that(clipped.nu_profile, is_(full.nu_profile))


@EQUIVALENCE
@given(
    seed=st.integers(min_value=0, max_value=100_000),
    budget=st.integers(min_value=0, max_value=4),
)
def test_engines_agree(seed, budget):
    net = instance_gen.random_planar(6, seed, instance_gen.GenOptions(max_edges=12))
    by_budget = st_interdiction.solve_st_interdiction(net, budget, prune=False)
    by_length = st_interdiction.solve_st_interdiction(net, budget, prune=False, engine="length")

    assert_that(by_length.nu_profile, is_(by_budget.nu_profile))


def test_prune_set_keeps_the_target_flow():
    net = test_utils.load_network(constants.THREE_PARALLEL)
    found = st_interdiction.InterdictionSet((0, 1, 2), (), 4)

    pruned = st_interdiction.prune_set(net, found, 0)
    assert_that(pruned.arcs, is_((0, 1, 2)))
    with pytest.raises(utils.OracleMismatch) as info:
        st_interdiction.prune_set(net, st_interdiction.InterdictionSet((0,), (), 2), 0)
    assert_that(info.value.diff["expected"], is_(0))


@pytest.mark.slow
def test_runtime_grows_with_the_budget():
    net = instance_gen.grid(5, 10, seed=3)
    elapsed = {}
    for budget in (8, 16, 32, 64):
        started = time.perf_counter()
        outcome = st_interdiction.solve_st_interdiction(net, budget, prune=False)
        elapsed[budget] = time.perf_counter() - started
        assert_that(outcome.nu_profile, has_length(budget + 1))

    assert_that(elapsed[64] / elapsed[8], is_(less_than_or_equal_to(16)))
