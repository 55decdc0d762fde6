# Copyright (c) planarint contributors. All rights reserved.
# Licensed under the MIT License.
"""
Tests for the interdiction duals and their parity labels.
"""
import itertools
from collections import Counter

import attrs
import networkx as nx
import pytest
from hamcrest import assert_that, contains_inanyorder, has_length, is_, is_in
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

import dual_builder
import instance_gen
import planar_core
import planarint_utils as utils
from dual_builder import DualArcKind

from .instance_test_client import constants, utils as test_utils


def _dual(path, modified=False):
    net = test_utils.load_network(path)
    faces = planar_core.trace_faces(net)
    if modified:
        return net, dual_builder.build_modified_dual(net, faces)
    return net, dual_builder.build_dual(net, faces)


def _kinds(dual, kind):
    return [arc for arc in dual.arcs if arc.kind is kind]


def test_parallel_arcs_dual():
    _net, dual = _dual(constants.THREE_PARALLEL)

    assert_that(dual.num_nodes, is_(3))
    assert_that(dual.arcs, has_length(6))
    assert_that([a.length for a in _kinds(dual, DualArcKind.FORWARD)], contains_inanyorder(5, 3, 2))
    assert_that([a.length for a in _kinds(dual, DualArcKind.REVERSE)], is_([0, 0, 0]))
    assert_that([a.cost for a in _kinds(dual, DualArcKind.REVERSE)], is_([0, 0, 0]))


def test_forward_arc_crosses_right_to_left():
    net, dual = _dual(constants.DIAMOND)
    faces = dual.faces
    for e in range(len(net.arcs)):
        forward = dual.arcs[dual.forward_of[e]]
        reverse = dual.arcs[dual.reverse_of[e]]
        assert_that((forward.tail, forward.head), is_((faces.right_face[e], faces.left_face[e])))
        assert_that((reverse.tail, reverse.head), is_((forward.head, forward.tail)))
        assert_that(dual.mate[dual.forward_of[e]], is_(dual.reverse_of[e]))


def test_modified_dual_has_an_arc_pair_per_corner():
    _net, dual = _dual(constants.CHAIN, modified=True)

    assert_that(dual.num_faces, is_(1))
    assert_that(dual.num_nodes, is_(4))
    assert_that(_kinds(dual, DualArcKind.LEAVE), has_length(4))
    enter = _kinds(dual, DualArcKind.ENTER)
    assert_that(enter, has_length(4))
    middle = [a for a in enter if a.primal == 1]
    assert_that([a.cost for a in middle], is_([1, 1]))
    assert_that(all(utils.is_inf(a.length) for a in enter), is_(True))


def test_capacity_gadget():
    net, dual = _dual(constants.CHAIN, modified=True)
    gadget = dual_builder.add_vertex_capacity_gadget(dual, net)
    capacity = _kinds(gadget, DualArcKind.CAPACITY)

    assert_that(capacity, has_length(2))
    assert_that({a.length for a in capacity}, is_({2}))
    assert_that(all(utils.is_inf(a.cost) for a in capacity), is_(True))
    assert_that(gadget.num_nodes, is_(dual.num_nodes))


def test_capacity_gadget_rejects_terminals():
    net = test_utils.load_network(constants.CHAIN)
    net = attrs.evolve(
        net, vertices=[attrs.evolve(net.vertices[0], capacity=1)] + list(net.vertices[1:])
    )
    dual = dual_builder.build_modified_dual(net, planar_core.trace_faces(net))
    with pytest.raises(utils.GadgetOnTerminal):
        dual_builder.add_vertex_capacity_gadget(dual, net)


def test_capacity_gadget_needs_modified_dual():
    net, dual = _dual(constants.CHAIN)
    with pytest.raises(utils.UnsupportedInstance):
        dual_builder.add_vertex_capacity_gadget(dual, net)


def test_parity_labels_follow_path():
    net, dual = _dual(constants.DIAMOND)
    parity = dual_builder.assign_parity(dual, net, (0, 2))

    assert_that(sum(1 for x in parity.labels if x == 1), is_(2))
    assert_that(sum(1 for x in parity.labels if x == -1), is_(2))
    assert_that(parity.labels[dual.forward_of[1]], is_(0))


@pytest.mark.parametrize("path", [(), (0, 3), (0, 2, 0)])
def test_bad_paths_are_rejected(path):
    net, dual = _dual(constants.DIAMOND)
    with pytest.raises(utils.PathNotInNetwork):
        dual_builder.assign_parity(dual, net, path)


@settings(max_examples=20, deadline=None)
@given(st.sets(st.sampled_from([1, 2])))
def test_every_st_cut_has_parity_one(extra):
    """A path from s to t crosses any s-t cut one more time forward than backward."""
    net, dual = _dual(constants.DIAMOND)
    parity = dual_builder.assign_parity(dual, net, (0, 2))
    circuit = dual_builder.cut_circuit(dual, net, {0} | extra)
    assert_that(dual_builder.circuit_parity(parity, circuit), is_(1))


def test_left_corners_at_path_vertex():
    net = test_utils.load_network(constants.CHAIN)
    assert_that(dual_builder.left_corners(net, 0, 1), is_({1}))


def test_extended_parity_marks_left_corners():
    net, dual = _dual(constants.CHAIN, modified=True)
    parity = dual_builder.assign_extended_parity(dual, net, (0, 1))
    marked = {
        (arc.kind, arc.corner): parity.labels[a]
        for a, arc in enumerate(dual.arcs)
        if arc.kind in dual_builder.VERTEX_LAYER and arc.primal == 1
    }
    assert_that(
        marked,
        is_(
            {
                (DualArcKind.LEAVE, 0): 0,
                (DualArcKind.ENTER, 0): 0,
                (DualArcKind.LEAVE, 1): 1,
                (DualArcKind.ENTER, 1): -1,
            }
        ),
    )


def test_dump_dual_lists_every_node():
    net, dual = _dual(constants.CHAIN, modified=True)
    data = dual_builder.dump_dual(dual, net)

    assert_that(data["nodes"], has_length(4))
    assert_that([n["kind"] for n in data["nodes"]], is_(["face", "vertex", "vertex", "vertex"]))
    assert_that(data["arcs"], has_length(len(dual.arcs)))
    assert_that(data["arcs"][0]["arc_id"], is_(0))


def _sides(net):
    """Every vertex set holding the source but not the sink."""
    s, t = net.single_pair()
    others = [v for v in range(net.index.num_vertices) if v not in (s, t)]
    for mask in range(1 << len(others)):
        yield frozenset([s] + [v for k, v in enumerate(others) if mask >> k & 1])


@settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(
    seed=st.integers(min_value=0, max_value=100_000),
    n=st.integers(min_value=3, max_value=7),
)
def test_cut_value_is_the_circuit_length(seed, n):
    net = instance_gen.random_planar(n, seed, instance_gen.GenOptions(max_edges=12))
    dual = dual_builder.build_dual(net, planar_core.trace_faces(net))
    index = net.index
    seen = {}
    for side in _sides(net):
        circuit = dual_builder.cut_circuit(dual, net, side)
        leaving, entering = planar_core.cut_arcs(net, side)
        value = sum(index.upper[e] for e in leaving) - sum(index.lower[e] for e in entering)
        assert_that(sum(dual.arcs[a].length for a in circuit), is_(value))
        out_degree = Counter(dual.arcs[a].tail for a in circuit)
        in_degree = Counter(dual.arcs[a].head for a in circuit)
        assert_that(out_degree, is_(in_degree))
        assert_that(seen.get(circuit, side), is_(side))
        seen[circuit] = side


def _crossings(dual, x, y):
    return [a for a in dual.out_arcs[x] if dual.arcs[a].head == y]


@settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(
    seed=st.integers(min_value=0, max_value=100_000),
    n=st.integers(min_value=3, max_value=6),
)
def test_circuit_parity_marks_separation(seed, n):
    """A simple dual circuit has parity -1, 0 or 1; a nonzero one separates s from t."""
    net = instance_gen.random_planar(n, seed, instance_gen.GenOptions(max_edges=9))
    s, t = net.single_pair()
    dual = dual_builder.build_dual(net, planar_core.trace_faces(net))
    parity = dual_builder.assign_parity(dual, net, planar_core.st_path(net, s, t))
    graph = nx.DiGraph((arc.tail, arc.head) for arc in dual.arcs)
    index = net.index
    for nodes in nx.simple_cycles(graph):
        hops = list(zip(nodes, nodes[1:] + nodes[:1]))
        for circuit in itertools.product(*(_crossings(dual, x, y) for x, y in hops)):
            value = dual_builder.circuit_parity(parity, circuit)
            assert_that(value, is_in([-1, 0, 1]))
            if value == 0:
                continue
            crossed = {dual.arcs[a].primal for a in circuit}
            rest = nx.MultiGraph()
            rest.add_nodes_from(range(index.num_vertices))
            rest.add_edges_from(
                (index.tail[e], index.head[e]) for e in range(index.num_arcs) if e not in crossed
            )
            assert_that(nx.has_path(rest, s, t), is_(False))
