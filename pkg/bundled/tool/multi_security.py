# Copyright (c) planarint contributors. All rights reserved.
# Licensed under the MIT License.
"""Flow security for planar networks with several sources and sinks.

Demands are first turned into a circulation problem: a spanning tree of
extra arcs, each parallel to a primal arc, sends every demand back from the
sinks to the sources with lower = upper bound. A saturating flow exists
exactly when the dual of that circulation instance has no negative circuit,
and the network can be broken with budget B exactly when some dual circuit
becomes negative after removals of total cost <= B.
"""
from __future__ import annotations

import itertools
from typing import Any, Dict, List, Optional, Sequence, Tuple

import attrs
import networkx as nx

import oracle
import planarint_utils as utils
from dual_builder import (
    DualArcKind,
    InterdictionDual,
    build_dual,
    build_modified_dual,
)
from planar_core import (
    HEAD,
    TAIL,
    Arc,
    ArcEnd,
    EmbeddedNetwork,
    FaceStructure,
    connected_components,
    require_valid,
    trace_faces,
)
from planarint_utils import INF, ExtInt
from st_interdiction import (
    ARCS_ONLY,
    MODES,
    WITH_VERTICES,
    InterdictionSet,
    WitnessStep,
    split_circuits,
)

Step = Tuple[int, bool]


# **********************************************************
# Circulation instance.
# **********************************************************
@attrs.frozen
class TreeArc:
    """An added arc of the return tree, stored at position `arc` of the extended network."""

    arc: int
    companion: int
    tail: int
    head: int
    bound: int


@attrs.frozen
class CirculationInstance:
    base: EmbeddedNetwork
    extended: EmbeddedNetwork
    tree: Tuple[TreeArc, ...]

    @property
    def num_base_arcs(self) -> int:
        return len(self.base.arcs)

    def is_tree_arc(self, arc: int) -> bool:
        return arc >= self.num_base_arcs

    def tree_arc(self, arc: int) -> TreeArc:
        return self.tree[arc - self.num_base_arcs]


def _spanning_tree(net: EmbeddedNetwork) -> Tuple[List[int], Dict[int, Tuple[int, int]]]:
    """Breadth-first tree from the smallest vertex id, lowest arc id first.

    Returns the visiting order and, per non-root vertex, (parent, arc).
    """
    index = net.index
    root = min(range(index.num_vertices), key=lambda v: net.vertices[v].id)
    graph = nx.MultiGraph()
    graph.add_nodes_from(range(index.num_vertices))
    for e in sorted(range(index.num_arcs), key=lambda e: net.arcs[e].id):
        graph.add_edge(index.tail[e], index.head[e], key=e)
    order = [root]
    parent: Dict[int, Tuple[int, int]] = {}
    for v, w in nx.bfs_edges(graph, root):
        parent[w] = (v, min(graph[v][w], key=lambda e: net.arcs[e].id))
        order.append(w)
    return order, parent


def build_circulation_instance(net: EmbeddedNetwork) -> CirculationInstance:
    """Adds the return tree; each tree edge {v, u} runs v -> u when d(side of v) >= 0."""
    index = net.index
    if index.num_vertices == 0:
        raise utils.InstanceError("Empty network")
    if len(connected_components(net)) > 1:
        raise utils.Disconnected("The underlying graph has several components")
    if sum(index.demand) != 0:
        raise utils.UnsupportedInstance(f"Demands sum to {sum(index.demand)}, expected 0")

    order, parent = _spanning_tree(net)
    below = list(index.demand)
    for v in reversed(order):
        if v in parent:
            below[parent[v][0]] += below[v]

    next_id = max(a.id for a in net.arcs) + 1 if net.arcs else 0
    rotations = [list(v.rotation) for v in net.vertices]
    new_arcs: List[Arc] = []
    tree: List[TreeArc] = []
    for child in order[1:]:
        up, companion = parent[child]
        demand = below[child]
        if demand > 0 or (demand == 0 and index.tail[companion] == child):
            tail, head, bound = child, up, demand
        else:
            tail, head, bound = up, child, -demand
        arc_id = next_id + len(new_arcs)
        position = len(net.arcs) + len(new_arcs)
        new_arcs.append(
            Arc(
                id=arc_id,
                tail=net.vertices[tail].id,
                head=net.vertices[head].id,
                upper=bound,
                lower=bound,
                cost=INF,
            )
        )
        tree.append(TreeArc(position, companion, tail, head, bound))
        companion_id = net.arcs[companion].id
        # The copy runs just left of the companion: after it at the companion's
        # tail, before it at the companion's head.
        for v, offset in ((index.tail[companion], 1), (index.head[companion], 0)):
            entries = rotations[v]
            at = next(
                k
                for k, r in enumerate(entries)
                if r.arc_id == companion_id and r.end == (TAIL if offset else HEAD)
            )
            entries.insert(at + offset, ArcEnd(arc_id, TAIL if v == tail else HEAD))

    extended = EmbeddedNetwork(
        vertices=[attrs.evolve(v, rotation=rotations[i]) for i, v in enumerate(net.vertices)],
        arcs=list(net.arcs) + new_arcs,
        sources=net.sources,
        sinks=net.sinks,
    )
    utils.log_to_output(
        f"Circulation instance: {len(tree)} tree arcs over {index.num_vertices} vertices",
        utils.MessageType.Debug,
    )
    return CirculationInstance(net, extended, tuple(tree))


# **********************************************************
# Saturating flow.
# **********************************************************
@attrs.frozen
class SaturationCheck:
    feasible: bool
    flows: Dict[int, int] = attrs.Factory(dict)
    potentials: Dict[int, int] = attrs.Factory(dict)


def _circulation_flows(
    ci: CirculationInstance, faces: FaceStructure, potential: Dict[int, int]
) -> Optional[Dict[int, int]]:
    """f(e) = mu(left(e)) - mu(right(e)); None if that is not a feasible circulation."""
    index = ci.extended.index
    flows = {
        e: potential[faces.left_face[e]] - potential[faces.right_face[e]]
        for e in range(index.num_arcs)
    }
    balance = [0] * index.num_vertices
    for e, f in flows.items():
        if not index.lower[e] <= f <= index.upper[e]:
            return None
        balance[index.tail[e]] -= f
        balance[index.head[e]] += f
    if any(balance):
        return None
    return flows


def check_saturating_flow(ci: CirculationInstance) -> SaturationCheck:
    """Negative-circuit test on the dual of the circulation instance.

    Without a negative circuit the shortest-path distances are face
    potentials whose differences give a feasible circulation.
    """
    faces = trace_faces(ci.extended)
    dual = build_dual(ci.extended, faces)
    if not dual.arcs:
        return SaturationCheck(feasible=True, flows={}, potentials={})
    graph = nx.MultiDiGraph()
    graph.add_nodes_from(range(dual.num_nodes))
    for a, arc in enumerate(dual.arcs):
        graph.add_edge(arc.tail, arc.head, key=a, length=arc.length)
    try:
        potential = nx.single_source_bellman_ford_path_length(graph, 0, weight="length")
    except nx.NetworkXUnbounded:
        return SaturationCheck(feasible=False)
    if len(potential) != dual.num_nodes:
        raise utils.Disconnected("The dual of the circulation instance is not connected")
    flows = _circulation_flows(ci, faces, potential)
    if flows is None:
        utils.log_error("Face potentials do not give a feasible circulation")
        return SaturationCheck(feasible=False)
    base = {e: flows[e] for e in range(ci.num_base_arcs)}
    return SaturationCheck(feasible=True, flows=base, potentials=dict(potential))


# **********************************************************
# Lengths with vertex removal.
# **********************************************************
def sweep_weights(ci: CirculationInstance, v: int) -> List[int]:
    """Per rotation entry of v: +bound for a tree arc leaving v, -bound for one entering."""
    index = ci.extended.index
    weights = []
    for dart in index.rotation[v]:
        arc = dart >> 1
        if not ci.is_tree_arc(arc):
            weights.append(0)
            continue
        bound = ci.tree_arc(arc).bound
        weights.append(-bound if dart & 1 else bound)
    return weights


def alpha(ci: CirculationInstance, v: int, from_corner: int, to_corner: int) -> int:
    """Signed tree bounds swept counterclockwise from one corner of v to another."""
    weights = sweep_weights(ci, v)
    degree = len(weights)
    total = 0
    k = from_corner
    while k != to_corner:
        k = (k + 1) % degree
        total += weights[k]
    return total


@attrs.frozen
class ChiLengths:
    """Per dual arc: the removable base part and the residual part that always stays."""

    base: Tuple[ExtInt, ...]
    residual: Tuple[int, ...]
    reference: Tuple[int, ...]

    def length(self, arc: int) -> ExtInt:
        return self.base[arc] + self.residual[arc]


def build_chi_lengths(
    ci: CirculationInstance,
    dual: InterdictionDual,
    reference: Optional[Sequence[int]] = None,
) -> ChiLengths:
    """Entering v at corner i adds alpha(i, ref_v); leaving at corner j subtracts alpha(j, ref_v).

    `reference` picks the reference corner of every vertex (corner 0 by default).
    """
    index = ci.extended.index
    terminals = set(index.sources) | set(index.sinks)
    refs = tuple(reference) if reference is not None else tuple(0 for _ in range(index.num_vertices))
    base: List[ExtInt] = []
    residual: List[int] = []
    for arc in dual.arcs:
        base.append(arc.length)
        if arc.kind not in (DualArcKind.ENTER, DualArcKind.LEAVE) or arc.primal in terminals:
            residual.append(0)
            continue
        swept = alpha(ci, arc.primal, arc.corner, refs[arc.primal])
        residual.append(swept if arc.kind is DualArcKind.ENTER else -swept)
    return ChiLengths(tuple(base), tuple(residual), refs)


# **********************************************************
# Budget-level circuit search.
# **********************************************************
@attrs.frozen
class _Option:
    """One way to traverse a dual arc: keep it, or remove it at `cost`."""

    tail: int
    head: int
    length: int
    cost: int
    arc: int
    removed: bool


@attrs.frozen
class _LevelGraph:
    num_nodes: int
    options: Tuple[_Option, ...]
    within: Tuple[Tuple[Optional[int], ...], ...]
    within_pred: Dict[int, Dict[int, int]]
    within_step: Dict[Tuple[int, int], Step]

    def path(self, source: int, target: int) -> List[Step]:
        nodes = nx.reconstruct_path(source, target, self.within_pred)
        return [self.within_step[(a, b)] for a, b in zip(nodes, nodes[1:])]


def _options(dual: InterdictionDual, chi: ChiLengths) -> List[_Option]:
    found = []
    for a, arc in enumerate(dual.arcs):
        base, rest = chi.base[a], chi.residual[a]
        if not utils.is_inf(base):
            found.append(_Option(arc.tail, arc.head, base + rest, 0, a, False))
        if utils.is_inf(arc.cost):
            continue
        # Removing a finite non-positive base for free changes nothing.
        if arc.cost == 0 and not utils.is_inf(base) and base <= 0:
            continue
        found.append(_Option(arc.tail, arc.head, rest, arc.cost, a, True))
    return found


def _level_graph(dual: InterdictionDual, chi: ChiLengths) -> _LevelGraph:
    """All-pairs shortest paths over the options that keep the budget."""
    options = _options(dual, chi)
    graph = nx.DiGraph()
    graph.add_nodes_from(range(dual.num_nodes))
    step: Dict[Tuple[int, int], Step] = {}
    for option in options:
        if option.cost:
            continue
        key = (option.tail, option.head)
        if key not in step or option.length < graph[key[0]][key[1]]["weight"]:
            graph.add_edge(key[0], key[1], weight=option.length)
            step[key] = (option.arc, option.removed)
    pred, dist = nx.floyd_warshall_predecessor_and_distance(graph, weight="weight")
    within = tuple(
        tuple(
            None if dist[x][y] == float("inf") else int(dist[x][y])
            for y in range(dual.num_nodes)
        )
        for x in range(dual.num_nodes)
    )
    return _LevelGraph(
        dual.num_nodes,
        tuple(options),
        within,
        {x: dict(p) for x, p in pred.items()},
        step,
    )


@attrs.frozen
class _StartSearch:
    """Closed walks through `start`; `closing[b]` is the best one ending at level b."""

    start: int
    budget: int
    closing: Tuple[Optional[int], ...]
    closing_step: Tuple[Optional[Tuple[_Option, int]], ...]
    entry: Tuple[Tuple[int, ...], ...]
    origin: Tuple[Tuple[Any, ...], ...]

    def best(self, spend: int) -> Optional[Tuple[int, int]]:
        """(value, level) of the best walk spending at most `spend`."""
        found = None
        for level in range(self.budget - spend, self.budget + 1):
            value = self.closing[level]
            if value is not None and (found is None or value < found[0]):
                found = (value, level)
        return found

    def steps(self, graph: _LevelGraph, level: int) -> List[Step]:
        option, from_level = self.closing_step[level]
        steps: List[Step] = [(option.arc, option.removed)]
        level, node = from_level, option.tail
        while True:
            x = self.entry[level][node]
            steps.extend(reversed(graph.path(x, node)))
            source = self.origin[level][x]
            if source[0] == "start":
                break
            if source[0] == "wait":
                level += 1
                node = x
            else:
                paid, from_level = source[1], source[2]
                steps.append((paid.arc, True))
                level, node = from_level, paid.tail
        steps.reverse()
        return steps


def _search_from(graph: _LevelGraph, start: int, budget: int) -> _StartSearch:
    n = graph.num_nodes
    paid = [o for o in graph.options if o.cost > 0]
    reach: List[Optional[List[Optional[int]]]] = [None] * (budget + 1)
    entry: List[Tuple[int, ...]] = [()] * (budget + 1)
    origin: List[Tuple[Any, ...]] = [()] * (budget + 1)
    for level in range(budget, -1, -1):
        pre: List[Optional[int]] = [None] * n
        source: List[Any] = [None] * n
        if level == budget:
            pre[start] = 0
            source[start] = ("start",)
        else:
            above = reach[level + 1]
            for x in range(n):
                if above[x] is not None:
                    pre[x] = above[x]
                    source[x] = ("wait",)
            for option in paid:
                if level + option.cost > budget:
                    continue
                before = reach[level + option.cost][option.tail]
                if before is None:
                    continue
                value = before + option.length
                if pre[option.head] is None or value < pre[option.head]:
                    pre[option.head] = value
                    source[option.head] = ("paid", option, level + option.cost)
        dist: List[Optional[int]] = [None] * n
        via = [-1] * n
        for x in range(n):
            if pre[x] is None:
                continue
            row = graph.within[x]
            for y in range(n):
                if row[y] is None:
                    continue
                value = pre[x] + row[y]
                if dist[y] is None or value < dist[y]:
                    dist[y] = value
                    via[y] = x
        reach[level] = dist
        entry[level] = tuple(via)
        origin[level] = tuple(source)

    closing: List[Optional[int]] = [None] * (budget + 1)
    closing_step: List[Optional[Tuple[_Option, int]]] = [None] * (budget + 1)
    for level in range(budget + 1):
        for option in graph.options:
            if option.head != start or level + option.cost > budget:
                continue
            before = reach[level + option.cost][option.tail]
            if before is None:
                continue
            value = before + option.length
            if closing[level] is None or value < closing[level]:
                closing[level] = value
                closing_step[level] = (option, level + option.cost)
    return _StartSearch(
        start, budget, tuple(closing), tuple(closing_step), tuple(entry), tuple(origin)
    )


@attrs.frozen
class CircuitSearch:
    """Minimum reduced closed-walk value per spendable budget 0..B."""

    mode: str
    dual: InterdictionDual
    chi: ChiLengths
    values: Tuple[ExtInt, ...]
    graph: _LevelGraph = attrs.field(repr=False)
    searches: Tuple[_StartSearch, ...] = attrs.field(repr=False)

    def witness(self, spend: int) -> Tuple[ExtInt, List[Step]]:
        """The most negative circuit in the best walk spending at most `spend`."""
        candidates = []
        for search in self.searches:
            found = search.best(spend)
            if found is not None:
                candidates.append((found[0], search.start, search, found[1]))
        if not candidates:
            return INF, []
        _value, _start, search, level = min(candidates, key=lambda c: c[:2])
        walk = search.steps(self.graph, level)
        circuits = split_circuits(self.dual, walk) or [walk]
        scored = [(self.reduced_length(c), i) for i, c in enumerate(circuits)]
        best, i = min(scored)
        return best, circuits[i]

    def reduced_length(self, steps: Sequence[Step]) -> ExtInt:
        total: ExtInt = 0
        for a, removed in steps:
            total = total + (self.chi.residual[a] if removed else self.chi.length(a))
        return total


def _security_dual(ci: CirculationInstance, mode: str) -> Tuple[InterdictionDual, ChiLengths]:
    faces = trace_faces(ci.extended)
    if mode == WITH_VERTICES:
        dual = build_modified_dual(ci.extended, faces)
        return dual, build_chi_lengths(ci, dual)
    dual = build_dual(ci.extended, faces)
    return dual, ChiLengths(
        base=tuple(arc.length for arc in dual.arcs),
        residual=tuple(0 for _ in dual.arcs),
        reference=(),
    )


def find_min_reduced_circuit(
    ci: CirculationInstance, budget: int, mode: str = ARCS_ONLY
) -> CircuitSearch:
    """Budget-level search for the cheapest negative closed walk in the dual.

    `values[b]` is the smallest reduced length of a closed walk whose removals
    cost at most b; it is negative exactly when some circuit is.
    """
    if mode not in MODES:
        raise utils.InstanceError(f"Unknown mode {mode!r}; expected one of {MODES}")
    if budget < 0:
        raise utils.InstanceError(f"Budget must be non-negative, got {budget}")
    dual, chi = _security_dual(ci, mode)
    graph = _level_graph(dual, chi)
    if any(graph.within[x][x] is not None and graph.within[x][x] < 0 for x in range(dual.num_nodes)):
        raise utils.PreconditionUnsatisfiable("A negative circuit exists without interdiction")
    searches = tuple(
        utils.parallel_map(lambda r: _search_from(graph, r, budget), range(dual.num_nodes))
    )
    values: List[ExtInt] = []
    for spend in range(budget + 1):
        found = [s.best(spend) for s in searches]
        finite = [f[0] for f in found if f is not None]
        values.append(min(finite) if finite else INF)
    utils.log_to_output(f"Reduced circuit values ({mode}): {values}", utils.MessageType.Debug)
    return CircuitSearch(mode, dual, chi, tuple(values), graph, searches)


# **********************************************************
# Security.
# **********************************************************
@attrs.frozen
class SecurityOutcome:
    max_budget: int
    security_budget: Optional[int]
    values: Tuple[ExtInt, ...]
    interdiction: Optional[InterdictionSet] = None
    witness: Tuple[WitnessStep, ...] = ()
    witness_length: ExtInt = 0
    verified: bool = False
    circulation: Optional[CirculationInstance] = attrs.field(default=None, eq=False, repr=False)

    def to_json(self, net: EmbeddedNetwork) -> Dict[str, Any]:
        ci = self.circulation
        steps = []
        for step in self.witness:
            entry: Dict[str, Any] = {"kind": step.kind.value, "removed": step.removed}
            if step.kind in (DualArcKind.FORWARD, DualArcKind.REVERSE):
                entry["arc_id"] = ci.extended.arcs[step.primal].id
                entry["tree_arc"] = ci.is_tree_arc(step.primal)
            else:
                entry["vertex_id"] = net.vertices[step.primal].id
            steps.append(entry)
        return {
            "security_budget": self.security_budget,
            "secure_up_to": None if self.security_budget is not None else self.max_budget,
            "values": [utils.to_jsonable(v) for v in self.values],
            "interdiction": None if self.interdiction is None else self.interdiction.to_json(net),
            "witness": {"length": utils.to_jsonable(self.witness_length), "steps": steps},
            "verified": self.verified,
        }


def _removal_set(
    ci: CirculationInstance, dual: InterdictionDual, steps: Sequence[Step]
) -> InterdictionSet:
    index = ci.base.index
    arcs = set()
    vertices = set()
    for a, removed in steps:
        arc = dual.arcs[a]
        if not removed:
            continue
        if arc.kind is DualArcKind.FORWARD and not ci.is_tree_arc(arc.primal):
            arcs.add(arc.primal)
        elif arc.kind is DualArcKind.ENTER:
            vertices.add(arc.primal)
    cost = sum(index.arc_cost[e] for e in arcs) + sum(index.vertex_cost[v] for v in vertices)
    return InterdictionSet(tuple(sorted(arcs)), tuple(sorted(vertices)), cost)


def _prune_breaking_set(net: EmbeddedNetwork, found: InterdictionSet) -> InterdictionSet:
    """Drops components, in ascending id order, while the flow stays infeasible."""
    index = net.index
    arcs = sorted(found.arcs, key=lambda e: net.arcs[e].id)
    vertices = sorted(found.vertices, key=lambda v: net.vertices[v].id)
    for e in list(arcs):
        trial = [x for x in arcs if x != e]
        if not oracle.saturation_feasible(net, trial, vertices):
            arcs = trial
    for v in list(vertices):
        trial = [x for x in vertices if x != v]
        if not oracle.saturation_feasible(net, arcs, trial):
            vertices = trial
    cost = sum(index.arc_cost[e] for e in arcs) + sum(index.vertex_cost[v] for v in vertices)
    return InterdictionSet(tuple(sorted(arcs)), tuple(sorted(vertices)), cost)


def prepare_security_instance(net: EmbeddedNetwork, mode: str) -> EmbeddedNetwork:
    if mode not in MODES:
        raise utils.InstanceError(f"Unknown mode {mode!r}; expected one of {MODES}")
    require_valid(net)
    if mode == WITH_VERTICES and any(a.lower for a in net.arcs):
        raise utils.UnsupportedInstance("Vertex interdiction requires zero lower bounds")
    if any(v.capacity is not None and not utils.is_inf(v.capacity) for v in net.vertices):
        utils.log_warning("Ignoring vertex capacities in the security solver")
    if mode == ARCS_ONLY and any(not utils.is_inf(v.cost) for v in net.vertices):
        utils.log_warning("Ignoring vertex costs in arcs_only mode")
        net = attrs.evolve(net, vertices=[attrs.evolve(v, cost=INF) for v in net.vertices])
    return net


# **********************************************************
# Removable arcs with lower bounds.
# **********************************************************
def removable_lower_bounded(net: EmbeddedNetwork) -> List[int]:
    """Positions of arcs with a positive lower bound and a finite cost."""
    index = net.index
    return [
        e
        for e in range(index.num_arcs)
        if index.lower[e] > 0 and not utils.is_inf(index.arc_cost[e])
    ]


def forced_removals(net: EmbeddedNetwork, budget: int) -> List[Tuple[int, Tuple[int, ...]]]:
    """(cost, arcs) for each set of removable lower-bounded arcs within `budget`, cheapest first."""
    index = net.index
    lowered = removable_lower_bounded(net)
    found = []
    # Costs are at least 1, so no set within budget has more than `budget` arcs.
    for size in range(min(len(lowered), budget) + 1):
        for combo in itertools.combinations(lowered, size):
            cost = sum(index.arc_cost[e] for e in combo)
            if cost <= budget:
                found.append((cost, combo))
    return sorted(found)


def fix_lower_bounded(net: EmbeddedNetwork, removed: Sequence[int]) -> EmbeddedNetwork:
    """Arcs in `removed` carry no flow; the other lower-bounded arcs can no longer be removed."""
    gone = set(removed)
    arcs = list(net.arcs)
    for e in removable_lower_bounded(net):
        if e in gone:
            arcs[e] = attrs.evolve(arcs[e], lower=0, upper=0, cost=INF)
        else:
            arcs[e] = attrs.evolve(arcs[e], cost=INF)
    return attrs.evolve(net, arcs=arcs)


def negative_circuit(ci: CirculationInstance) -> Tuple[InterdictionDual, int, List[Step]]:
    """A negative circuit of the plain dual, lightest parallel arc per step."""
    dual = build_dual(ci.extended, trace_faces(ci.extended))
    graph = nx.DiGraph()
    graph.add_nodes_from(range(dual.num_nodes))
    for a, arc in enumerate(dual.arcs):
        if utils.is_inf(arc.length):
            continue
        known = graph.get_edge_data(arc.tail, arc.head)
        if known is None or arc.length < known["length"]:
            graph.add_edge(arc.tail, arc.head, length=arc.length, arc=a)
    nodes = nx.find_negative_cycle(graph, 0, weight="length")
    steps = [(graph[x][y]["arc"], False) for x, y in zip(nodes, nodes[1:])]
    return dual, sum(dual.arcs[a].length for a, _removed in steps), steps


@attrs.frozen
class _ForcedChoice:
    """Lower-bounded arcs removed up front and the circuit search on what remains."""

    arcs: Tuple[int, ...]
    cost: int
    circulation: CirculationInstance
    search: Optional[CircuitSearch] = None
    broken: Optional[Tuple[InterdictionDual, int, List[Step]]] = None

    def value(self, spend: int) -> ExtInt:
        if spend < self.cost:
            return INF
        if self.search is None:
            return self.broken[1]
        return self.search.values[spend - self.cost]

    def witness(self, spend: int) -> Tuple[InterdictionDual, ExtInt, List[Step]]:
        if self.search is None:
            return self.broken
        length, circuit = self.search.witness(spend - self.cost)
        return self.search.dual, length, circuit


def _forced_choice(
    net: EmbeddedNetwork, cost: int, arcs: Tuple[int, ...], max_budget: int, mode: str
) -> _ForcedChoice:
    ci = build_circulation_instance(fix_lower_bounded(net, arcs))
    if not check_saturating_flow(ci).feasible:
        return _ForcedChoice(arcs, cost, ci, broken=negative_circuit(ci))
    search = find_min_reduced_circuit(ci, max_budget - cost, mode)
    return _ForcedChoice(arcs, cost, ci, search=search)


# **********************************************************
# Solver.
# **********************************************************
def solve_security(
    net: EmbeddedNetwork, max_budget: int, mode: str = ARCS_ONLY, prune: bool = True
) -> SecurityOutcome:
    """Smallest budget <= max_budget that makes every saturating flow impossible.

    A removed arc with a positive lower bound takes its reverse dual arc with
    it, which a per-step circuit search cannot express. Such arcs are decided
    up front: every affordable subset is removed outright, the rest are made
    unremovable, and the search runs on the remaining budget.
    """
    net = prepare_security_instance(net, mode)
    ci = build_circulation_instance(net)
    if not check_saturating_flow(ci).feasible:
        raise utils.PreconditionUnsatisfiable("No saturating flow without interdiction")
    if removable_lower_bounded(net):
        choices = [
            _forced_choice(net, cost, arcs, max_budget, mode)
            for cost, arcs in forced_removals(net, max_budget)
        ]
        utils.log_to_output(
            f"Security search over {len(choices)} lower-bounded removal sets",
            utils.MessageType.Debug,
        )
    else:
        choices = [_ForcedChoice((), 0, ci, search=find_min_reduced_circuit(ci, max_budget, mode))]

    values = tuple(min(c.value(b) for c in choices) for b in range(max_budget + 1))
    budget = next(
        (b for b, value in enumerate(values) if not utils.is_inf(value) and value < 0),
        None,
    )
    if budget is None:
        return SecurityOutcome(max_budget, None, values, circulation=ci)

    choice = min(choices, key=lambda c: c.value(budget))
    dual, length, circuit = choice.witness(budget)
    removal = _removal_set(choice.circulation, dual, circuit)
    found = InterdictionSet(
        tuple(sorted(set(choice.arcs) | set(removal.arcs))),
        removal.vertices,
        removal.cost + choice.cost,
    )
    if prune:
        found = _prune_breaking_set(net, found)
    if oracle.saturation_feasible(net, found.arcs, found.vertices):
        raise utils.OracleMismatch(
            "Recovered interdiction set leaves a saturating flow",
            diff={
                "security_budget": budget,
                "arcs": net.arc_ids(found.arcs),
                "vertices": net.vertex_ids(found.vertices),
            },
        )
    witness = tuple(
        WitnessStep(dual.arcs[a].kind, dual.arcs[a].primal, removed, a) for a, removed in circuit
    )
    return SecurityOutcome(
        max_budget=max_budget,
        security_budget=budget,
        values=values,
        interdiction=found,
        witness=witness,
        witness_length=length,
        verified=True,
        circulation=choice.circulation,
    )
