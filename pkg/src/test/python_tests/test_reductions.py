# Copyright (c) planarint contributors. All rights reserved.
# Licensed under the MIT License.
"""
Tests for the k-densest subgraph encoding.
"""
import pytest
from hamcrest import assert_that, has_length, is_
from hypothesis import given, settings
from hypothesis import strategies as st

import instance_gen
import oracle
import planar_core
import planarint_utils as utils
import reductions
from reductions import GraphEdge, GraphVertex, PlanarGraph
from st_interdiction import WITH_VERTICES

from .instance_test_client import constants


def _solve(graph, k):
    encoding = reductions.encode_kdense(graph, k)
    result = oracle.interdict_exhaustive(encoding.network, k, WITH_VERTICES)
    return encoding, result


def test_triangle_encoding():
    graph = reductions.load_graph(constants.TRIANGLE_GRAPH)
    encoding = reductions.encode_kdense(graph, 2)
    net = encoding.network

    assert_that(net.sources, has_length(3))
    assert_that(net.sinks, has_length(3))
    assert_that(net.arcs, has_length(6))
    assert_that({a.upper for a in net.arcs}, is_({1}))
    assert_that(all(utils.is_inf(a.cost) for a in net.arcs), is_(True))
    assert_that([v.demand for v in net.vertices], is_([-2, -2, -2, 1, 1, 1]))
    assert_that(encoding.edge_of, is_({3: 0, 4: 1, 5: 2}))


def test_encoding_is_embedded():
    net = reductions.encode_kdense(reductions.load_graph(constants.SQUARE_GRAPH), 2).network
    report = planar_core.validate(net)

    assert_that(report.rotation_problems, is_(()))
    assert_that([c.euler_ok for c in report.components], is_([True]))


@pytest.mark.parametrize(
    "path, k, expected",
    [
        (constants.TRIANGLE_GRAPH, 2, 1),
        (constants.TRIANGLE_GRAPH, 3, 3),
        (constants.SQUARE_GRAPH, 3, 2),
        (constants.SQUARE_GRAPH, 0, 0),
    ],
)
def test_flow_decrease_counts_induced_edges(path, k, expected):
    encoding, result = _solve(reductions.load_graph(path), k)
    vertices, edges = reductions.decode_kdense(encoding, result.sets[-1].vertices)

    assert_that(result.nu_profile[0] - result.nu_profile[-1], is_(expected))
    assert_that(edges, is_(expected))
    assert_that(vertices, has_length(k))


def test_decode_pads_with_smallest_ids():
    graph = reductions.load_graph(constants.TRIANGLE_GRAPH)
    encoding = reductions.encode_kdense(graph, 2)

    assert_that(reductions.decode_kdense(encoding, [2]), is_(([0, 2], 1)))
    assert_that(reductions.decode_kdense(encoding, [0, 1]), is_(([0, 1], 1)))
    with pytest.raises(utils.InvalidInterdictionSet):
        reductions.decode_kdense(encoding, [0, 1, 2])
    with pytest.raises(utils.InvalidInterdictionSet):
        reductions.decode_kdense(encoding, [4])


def test_graph_checks():
    loop = PlanarGraph(vertices=[GraphVertex(0, (0, 0))], edges=[GraphEdge(0, 0, 0)])
    parallel = PlanarGraph(
        vertices=[GraphVertex(0, (0, 1)), GraphVertex(1, (1, 0))],
        edges=[GraphEdge(0, 0, 1), GraphEdge(1, 1, 0)],
    )
    rotation = PlanarGraph(
        vertices=[GraphVertex(0, (0,)), GraphVertex(1, ())], edges=[GraphEdge(0, 0, 1)]
    )
    with pytest.raises(utils.NotSimpleGraph):
        reductions.check_graph(loop)
    with pytest.raises(utils.NotSimpleGraph):
        reductions.check_graph(parallel)
    with pytest.raises(utils.MalformedRotation):
        reductions.check_graph(rotation)
    with pytest.raises(utils.InstanceError):
        reductions.parse_graph({"vertices": [{"id": 0}]})


@settings(max_examples=25, deadline=None)
@given(
    seed=st.integers(min_value=0, max_value=100_000),
    n=st.integers(min_value=2, max_value=7),
    k=st.integers(min_value=0, max_value=4),
)
def test_matches_direct_enumeration(seed, n, k):
    graph = instance_gen.random_planar_graph(n, seed)
    k = min(k, n)
    encoding, result = _solve(graph, k)
    _vertices, best = oracle.densest_subgraph_exhaustive(graph, k)
    _chosen, edges = reductions.decode_kdense(encoding, result.sets[-1].vertices)

    assert_that(result.nu_profile[0] - result.nu_profile[-1], is_(best))
    assert_that(edges, is_(best))
