# Copyright (c) planarint contributors. All rights reserved.
# Licensed under the MIT License.
"""Brute-force ground truth for small instances.

Everything here works on a non-planar lift of the instance (super terminals,
split vertices) and uses networkx max flow, so it shares no graph code with
the dual-based solvers.
"""
from __future__ import annotations

import itertools
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

import attrs
import networkx as nx
from networkx.algorithms.flow import edmonds_karp

import planarint_utils as utils
from planar_core import EmbeddedNetwork, remove_components

MAX_REMOVABLE = 20
MAX_DENSEST_VERTICES = 16
SUPER_SOURCE = ("super", "source")
SUPER_SINK = ("super", "sink")


@attrs.frozen
class LiftedFlowNetwork:
    """Plain directed network; `arcs` maps each lift edge to its arc ids."""

    graph: nx.DiGraph
    source: Hashable
    sink: Hashable
    demand: int
    arcs: Dict[Tuple[Hashable, Hashable], Tuple[Tuple[int, int], ...]]


@attrs.frozen
class FlowResult:
    value: int
    flows: Dict[int, int]


@attrs.frozen
class ComponentSet:
    """A removal set in ids."""

    arcs: Tuple[int, ...] = ()
    vertices: Tuple[int, ...] = ()
    cost: int = 0


@attrs.frozen
class ExhaustiveResult:
    nu_profile: Tuple[int, ...]
    sets: Tuple[ComponentSet, ...]


@attrs.frozen
class SecurityResult:
    security_budget: Optional[int]
    breaking_set: Optional[ComponentSet]


# **********************************************************
# Lifting.
# **********************************************************
def _big_m(net: EmbeddedNetwork) -> int:
    finite = sum(a.upper for a in net.arcs)
    finite += sum(
        v.capacity
        for v in net.vertices
        if v.capacity is not None and not utils.is_inf(v.capacity)
    )
    finite += sum(abs(v.demand) for v in net.vertices)
    return 1 + finite


def _add_capacity(graph: nx.DiGraph, a: Hashable, b: Hashable, capacity: int) -> None:
    if graph.has_edge(a, b):
        graph[a][b]["capacity"] += capacity
    else:
        graph.add_edge(a, b, capacity=capacity)


def build_lift(
    net: EmbeddedNetwork,
    removed_arcs: Iterable[int] = (),
    removed_vertices: Iterable[int] = (),
    use_vertex_capacities: bool = False,
) -> LiftedFlowNetwork:
    """Lifts G minus the removed positions into a plain flow network."""
    big = _big_m(net)
    sub = remove_components(net, removed_arcs, removed_vertices, allow_terminals=True)
    graph = nx.DiGraph()
    split = {
        v.id
        for v in sub.vertices
        if use_vertex_capacities and v.capacity is not None and not utils.is_inf(v.capacity)
    }

    def _in(x: int) -> Hashable:
        return ("in", x) if x in split else ("v", x)

    def _out(x: int) -> Hashable:
        return ("out", x) if x in split else ("v", x)

    for vertex in sub.vertices:
        graph.add_node(_in(vertex.id))
        graph.add_node(_out(vertex.id))
        if vertex.id in split:
            graph.add_edge(_in(vertex.id), _out(vertex.id), capacity=vertex.capacity)

    arcs: Dict[Tuple[Hashable, Hashable], List[Tuple[int, int]]] = {}
    for arc in sub.arcs:
        edge = (_out(arc.tail), _in(arc.head))
        _add_capacity(graph, edge[0], edge[1], arc.upper)
        arcs.setdefault(edge, []).append((arc.id, arc.upper))

    demands = {v.id: v.demand for v in sub.vertices}
    if any(demands.values()) or len(sub.sources) != 1 or len(sub.sinks) != 1:
        graph.add_node(SUPER_SOURCE)
        graph.add_node(SUPER_SINK)
        any_demand = any(demands.values())
        for s in sub.sources:
            cap = -demands[s] if any_demand else big
            if cap > 0:
                _add_capacity(graph, SUPER_SOURCE, _in(s), cap)
        for t in sub.sinks:
            cap = demands[t] if any_demand else big
            if cap > 0:
                _add_capacity(graph, _out(t), SUPER_SINK, cap)
        source, sink = SUPER_SOURCE, SUPER_SINK
        demand = sum(max(0, demands[t]) for t in sub.sinks)
    else:
        source, sink = _in(sub.sources[0]), _out(sub.sinks[0])
        demand = 0
    return LiftedFlowNetwork(
        graph=graph,
        source=source,
        sink=sink,
        demand=demand,
        arcs={edge: tuple(sorted(members)) for edge, members in arcs.items()},
    )


# **********************************************************
# Flows and cuts.
# **********************************************************
def max_flow(lift: LiftedFlowNetwork) -> FlowResult:
    """Exact integral max flow with a per-arc assignment."""
    if lift.source == lift.sink:
        raise utils.InstanceError("Source and sink coincide in the lift")
    value, flow_dict = nx.maximum_flow(
        lift.graph, lift.source, lift.sink, capacity="capacity", flow_func=edmonds_karp
    )
    flows: Dict[int, int] = {}
    for (a, b), members in lift.arcs.items():
        remaining = flow_dict[a][b]
        for arc_id, upper in members:
            share = min(upper, remaining)
            flows[arc_id] = share
            remaining -= share
    return FlowResult(value=int(value), flows=flows)


def min_cut(lift: LiftedFlowNetwork) -> Tuple[int, List[int]]:
    """Minimum cut value and its source side, as original vertex ids.

    The side is the set reached from the source in the residual network, so
    it is the minimum cut closest to the source.
    """
    value, flow_dict = nx.maximum_flow(
        lift.graph, lift.source, lift.sink, capacity="capacity", flow_func=edmonds_karp
    )
    residual = nx.DiGraph()
    residual.add_nodes_from(lift.graph)
    for a, b, data in lift.graph.edges(data=True):
        flow = flow_dict[a][b]
        if flow < data["capacity"]:
            residual.add_edge(a, b)
        if flow > 0:
            residual.add_edge(b, a)
    reachable = nx.descendants(residual, lift.source) | {lift.source}
    side = sorted({node[1] for node in reachable if node[0] in ("v", "in")})
    return int(value), side


def max_flow_value(
    net: EmbeddedNetwork,
    removed_arcs: Iterable[int] = (),
    removed_vertices: Iterable[int] = (),
    use_vertex_capacities: bool = False,
) -> int:
    return max_flow(
        build_lift(net, removed_arcs, removed_vertices, use_vertex_capacities)
    ).value


def enumerate_cuts(net: EmbeddedNetwork) -> int:
    """min over all s-t vertex bipartitions of u(leaving arcs)."""
    s, t = net.single_pair()
    index = net.index
    others = [v for v in range(index.num_vertices) if v not in (s, t)]
    best: Optional[int] = None
    for size in range(len(others) + 1):
        for extra in itertools.combinations(others, size):
            inside = {s, *extra}
            value = sum(
                index.upper[e]
                for e in range(index.num_arcs)
                if index.tail[e] in inside and index.head[e] not in inside
            )
            best = value if best is None else min(best, value)
    return 0 if best is None else best


def saturation_feasible(
    net: EmbeddedNetwork,
    removed_arcs: Iterable[int] = (),
    removed_vertices: Iterable[int] = (),
) -> bool:
    """Whether a flow l <= f <= u meets every demand exactly."""
    sub = remove_components(net, removed_arcs, removed_vertices, allow_terminals=True)
    if sum(v.demand for v in sub.vertices) != 0:
        return False
    excess = {v.id: v.demand for v in sub.vertices}
    graph = nx.DiGraph()
    graph.add_node(SUPER_SOURCE)
    graph.add_node(SUPER_SINK)
    for vertex in sub.vertices:
        graph.add_node(vertex.id)
    for arc in sub.arcs:
        if arc.lower > arc.upper:
            return False
        excess[arc.head] -= arc.lower
        excess[arc.tail] += arc.lower
        if arc.upper > arc.lower:
            _add_capacity(graph, arc.tail, arc.head, arc.upper - arc.lower)
    required = 0
    for vertex_id, value in excess.items():
        if value < 0:
            _add_capacity(graph, SUPER_SOURCE, vertex_id, -value)
        elif value > 0:
            _add_capacity(graph, vertex_id, SUPER_SINK, value)
            required += value
    if required == 0:
        return True
    value = nx.maximum_flow_value(
        graph, SUPER_SOURCE, SUPER_SINK, capacity="capacity", flow_func=edmonds_karp
    )
    return value == required


# **********************************************************
# Enumeration.
# **********************************************************
def _removable(
    net: EmbeddedNetwork, mode: str
) -> List[Tuple[str, int, int]]:
    """(kind, position, cost) of every removable component, arcs first, by id.

    Any vertex with a finite cost counts, terminals included; the solvers
    reject such terminals before they ever get here.
    """
    index = net.index
    arcs = sorted(
        (net.arcs[e].id, e) for e in range(index.num_arcs) if not utils.is_inf(index.arc_cost[e])
    )
    found = [("arc", e, index.arc_cost[e]) for _id, e in arcs]
    if mode == "with_vertices":
        vertices = sorted(
            (net.vertices[v].id, v)
            for v in range(index.num_vertices)
            if not utils.is_inf(index.vertex_cost[v])
        )
        found += [("vertex", v, index.vertex_cost[v]) for _id, v in vertices]
    if len(found) > MAX_REMOVABLE:
        raise utils.TooLarge(
            f"{len(found)} removable components exceed the bound of {MAX_REMOVABLE}"
        )
    return found


def _subsets(
    removable: Sequence[Tuple[str, int, int]], budget: int
) -> List[Tuple[int, Tuple[int, ...], Tuple[int, ...]]]:
    """All (cost, arc positions, vertex positions) with cost <= budget."""
    result = []
    cheapest = min((c for _k, _p, c in removable), default=1)
    max_size = len(removable) if cheapest < 1 else min(len(removable), budget // cheapest)
    for size in range(max_size + 1):
        for combo in itertools.combinations(removable, size):
            cost = sum(c for _k, _p, c in combo)
            if cost > budget:
                continue
            arcs = tuple(p for k, p, _c in combo if k == "arc")
            vertices = tuple(p for k, p, _c in combo if k == "vertex")
            result.append((cost, arcs, vertices))
    return result


def _as_component_set(
    net: EmbeddedNetwork, cost: int, arcs: Sequence[int], vertices: Sequence[int]
) -> ComponentSet:
    return ComponentSet(
        arcs=tuple(net.arc_ids(arcs)), vertices=tuple(net.vertex_ids(vertices)), cost=cost
    )


def interdict_exhaustive(
    net: EmbeddedNetwork,
    budget: int,
    mode: str = "arcs_only",
    use_vertex_capacities: bool = False,
) -> ExhaustiveResult:
    """Exact nu profile by trying every removal set of cost <= budget."""
    subsets = _subsets(_removable(net, mode), budget)

    def _evaluate(item):
        cost, arcs, vertices = item
        value = max_flow_value(net, arcs, vertices, use_vertex_capacities)
        return value, cost, _as_component_set(net, cost, arcs, vertices)

    evaluated = utils.parallel_map(_evaluate, subsets)
    profile: List[int] = []
    sets: List[ComponentSet] = []
    for level in range(budget + 1):
        best = min(
            (
                (value, cost, found.arcs, found.vertices, found)
                for value, cost, found in evaluated
                if cost <= level
            ),
            key=lambda item: item[:4],
        )
        profile.append(best[0])
        sets.append(best[4])
    return ExhaustiveResult(nu_profile=tuple(profile), sets=tuple(sets))


def security_exhaustive(
    net: EmbeddedNetwork,
    max_budget: int,
    mode: str = "arcs_only",
    use_vertex_capacities: bool = False,
) -> SecurityResult:
    """Cheapest removal set that breaks the network, if one costs <= max_budget.

    With demands present, "broken" means no saturating flow remains;
    otherwise it means the max flow drops.
    """
    with_demands = any(v.demand for v in net.vertices)
    if with_demands:
        if not saturation_feasible(net):
            raise utils.PreconditionUnsatisfiable("No saturating flow without interdiction")

        def _broken(arcs, vertices) -> bool:
            return not saturation_feasible(net, arcs, vertices)

    else:
        initial = max_flow_value(net, use_vertex_capacities=use_vertex_capacities)

        def _broken(arcs, vertices) -> bool:
            return max_flow_value(net, arcs, vertices, use_vertex_capacities) < initial

    subsets = sorted(
        _subsets(_removable(net, mode), max_budget),
        key=lambda item: (
            item[0],
            tuple(net.arc_ids(item[1])),
            tuple(net.vertex_ids(item[2])),
        ),
    )
    for cost, arcs, vertices in subsets:
        if _broken(arcs, vertices):
            return SecurityResult(cost, _as_component_set(net, cost, arcs, vertices))
    return SecurityResult(None, None)


def densest_subgraph_exhaustive(graph, k: int) -> Tuple[List[int], int]:
    """Best k-vertex subgraph of an undirected graph; ties go to the smallest ids."""
    ids = sorted(v.id for v in graph.vertices)
    if len(ids) > MAX_DENSEST_VERTICES:
        raise utils.TooLarge(f"{len(ids)} vertices exceed {MAX_DENSEST_VERTICES}")
    if not 0 <= k <= len(ids):
        raise utils.InvalidInterdictionSet(f"k={k} is outside 0..{len(ids)}")
    edges = [(e.u, e.v) for e in graph.edges]
    best: Tuple[List[int], int] = ([], -1)
    for combo in itertools.combinations(ids, k):
        chosen = set(combo)
        count = sum(1 for u, v in edges if u in chosen and v in chosen)
        if count > best[1]:
            best = (list(combo), count)
    return best
