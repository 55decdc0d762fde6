# Copyright (c) planarint contributors. All rights reserved.
# Licensed under the MIT License.
"""
Tests for the seeded instance generators.
"""
import pytest
from hamcrest import assert_that, empty, has_length, is_

import instance_gen
import oracle
import planar_core
import planarint_utils as utils
import reductions
from instance_gen import GenOptions


def test_grid_size():
    net = instance_gen.grid(3, 3, seed=1)

    assert_that(net.vertices, has_length(9))
    assert_that(net.arcs, has_length(12))
    assert_that(planar_core.validate(net).problems(), is_(empty()))
    assert_that((net.sources, net.sinks), is_(((0,), (8,))))


def test_generation_is_deterministic():
    first = instance_gen.generate("random_planar", "8", seed=7)
    second = instance_gen.generate("random_planar", "8", seed=7)
    assert_that(planar_core.dump_instance(first), is_(planar_core.dump_instance(second)))


@pytest.mark.parametrize(
    "family, size",
    [("grid", "2x4"), ("wheel", "5"), ("random_planar", "9")],
)
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_families_are_valid(family, size, seed):
    options = GenOptions(vertex_costs=True, vertex_capacities=True)
    net = instance_gen.generate(family, size, seed, options)
    report = planar_core.validate(net)

    assert_that(report.problems(), is_(empty()))
    assert_that(report.components, has_length(1))
    s, t = net.single_pair()
    assert_that(planar_core.st_path(net, s, t), is_(tuple))


def test_wheel_shape():
    net = instance_gen.wheel(6)
    assert_that(net.vertices, has_length(7))
    assert_that(net.arcs, has_length(12))


@pytest.mark.parametrize("seed", [0, 3, 11])
def test_multi_terminal_instances_saturate(seed):
    net = instance_gen.random_planar(8, seed, GenOptions(terminals="multi"))

    assert_that(planar_core.validate(net).problems(), is_(empty()))
    assert_that(sum(v.demand for v in net.vertices), is_(0))
    assert_that(oracle.saturation_feasible(net), is_(True))


def test_terminals_stay_unremovable():
    net = instance_gen.grid(3, 4, seed=5, options=GenOptions(vertex_costs=True))
    for v in net.index.sources + net.index.sinks:
        assert_that(utils.is_inf(net.index.vertex_cost[v]), is_(True))
        assert_that(net.index.capacity[v], is_(None))


def test_max_edges_limits_extra_segments():
    net = instance_gen.random_planar(8, 4, GenOptions(max_edges=7, extra_edge_probability=1.0))
    assert_that(net.arcs, has_length(7))


def test_random_graph_is_simple():
    graph = instance_gen.random_planar_graph(9, seed=2)
    reductions.check_graph(graph)
    assert_that(graph.vertices, has_length(9))


@pytest.mark.parametrize(
    "family, size",
    [("grid", "3"), ("wheel", "x"), ("grid", "1x1"), ("wheel", "2"), ("hexagon", "3")],
)
def test_bad_sizes(family, size):
    with pytest.raises(utils.InstanceError):
        instance_gen.generate(family, size)
