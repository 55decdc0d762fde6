# Copyright (c) planarint contributors. All rights reserved.
# Licensed under the MIT License.
"""Single-pair interdiction on planar networks.

An optimal interdiction set of budget B corresponds to a shortest closed walk
of parity 1 in the layered graph whose nodes are (dual node, remaining
budget, parity). Arcs of the layered graph either keep a dual arc (paying its
length), remove it (paying its cost from the budget, at length 0) or waste
one unit of budget.
"""
from __future__ import annotations

import enum
import heapq
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import attrs

import oracle
import planarint_utils as utils
from dual_builder import (
    DualArcKind,
    InterdictionDual,
    ParityLabels,
    add_vertex_capacity_gadget,
    assign_extended_parity,
    assign_parity,
    build_dual,
    build_modified_dual,
)
from planar_core import (
    HEAD,
    TAIL,
    Arc,
    ArcEnd,
    EmbeddedNetwork,
    Vertex,
    reachable_from,
    require_valid,
    st_path,
    trace_faces,
)
from planarint_utils import INF, ExtInt

ARCS_ONLY = "arcs_only"
WITH_VERTICES = "with_vertices"
MODES = (ARCS_ONLY, WITH_VERTICES)
ENGINES = ("budget", "length")

# (dual node, level, parity)
LayeredNode = Tuple[int, int, int]


# **********************************************************
# Knapsack view of a single cut.
# **********************************************************
def knapsack_reduced_length(items: Iterable[Tuple[ExtInt, ExtInt]], budget: int) -> ExtInt:
    """Smallest total length left after removing items of total cost <= budget.

    Items are (length, cost) pairs. An item of length INF has to be removed,
    otherwise the result is INF. Items of non-positive length are never removed.
    """
    total = 0
    forced = 0
    choices: List[Tuple[int, int]] = []
    for length, cost in items:
        if utils.is_inf(length):
            if utils.is_inf(cost):
                return INF
            forced += cost
            continue
        total += length
        if length > 0 and not utils.is_inf(cost):
            choices.append((length, cost))
    if forced > budget:
        return INF
    capacity = budget - forced
    best = [0] * (capacity + 1)
    for length, cost in choices:
        for b in range(capacity, cost - 1, -1):
            best[b] = max(best[b], best[b - cost] + length)
    return total - best[capacity]


def reduced_cut_value(net: EmbeddedNetwork, cut: Iterable[int], budget: int) -> ExtInt:
    """nu_B of the cut made of the arc positions in `cut`."""
    index = net.index
    return knapsack_reduced_length(((index.upper[e], index.arc_cost[e]) for e in cut), budget)


# **********************************************************
# Layered graph.
# **********************************************************
class ArcClass(enum.Enum):
    WAIT = "E0"
    KEEP_EQUAL = "E1="
    KEEP_PLUS = "E1+"
    KEEP_MINUS = "E1-"
    REMOVE_EQUAL = "E2="
    REMOVE_PLUS = "E2+"
    REMOVE_MINUS = "E2-"


_KEEP = {0: ArcClass.KEEP_EQUAL, 1: ArcClass.KEEP_PLUS, -1: ArcClass.KEEP_MINUS}
_REMOVE = {0: ArcClass.REMOVE_EQUAL, 1: ArcClass.REMOVE_PLUS, -1: ArcClass.REMOVE_MINUS}
_REMOVED_CLASSES = frozenset(_REMOVE.values())


@attrs.frozen
class Move:
    """A dual arc as seen from its tail; None marks an unusable option."""

    head: int
    length: Optional[int]
    cost: Optional[int]
    parity: int
    arc: int


@attrs.frozen
class LayeredOption:
    """One keep or remove use of a dual arc, independent of the level it starts on."""

    head: int
    parity: int
    length: int
    cost: int
    arc_class: ArcClass
    dual_arc: int


@attrs.frozen
class LayeredArc:
    tail: LayeredNode
    head: LayeredNode
    length: int
    arc_class: ArcClass
    dual_arc: Optional[int]


@attrs.frozen
class LayeredBudgetGraph:
    """Implicit layered graph; nodes are (dual node, remaining budget, parity)."""

    dual: InterdictionDual
    parity: ParityLabels
    budget: int
    parity_bound: int
    moves: Tuple[Tuple[Move, ...], ...]

    @property
    def num_nodes(self) -> int:
        return self.dual.num_nodes * (self.budget + 1) * (2 * self.parity_bound + 1)

    def nodes(self) -> Iterator[LayeredNode]:
        h = self.parity_bound
        for v in range(self.dual.num_nodes):
            for b in range(self.budget + 1):
                for p in range(-h, h + 1):
                    yield (v, b, p)

    def options(self, v: int, p: int) -> Iterator[LayeredOption]:
        """Keep and remove options out of dual node v at parity p."""
        for move in self.moves[v]:
            q = p + move.parity
            if abs(q) > self.parity_bound:
                continue
            if move.length is not None:
                yield LayeredOption(move.head, q, move.length, 0, _KEEP[move.parity], move.arc)
            if move.cost is not None:
                yield LayeredOption(move.head, q, 0, move.cost, _REMOVE[move.parity], move.arc)

    def arcs_from(self, node: LayeredNode) -> List[LayeredArc]:
        v, b, p = node
        found = []
        if b > 0:
            found.append(LayeredArc(node, (v, b - 1, p), 0, ArcClass.WAIT, None))
        for option in self.options(v, p):
            if option.cost <= b:
                found.append(
                    LayeredArc(
                        node,
                        (option.head, b - option.cost, option.parity),
                        option.length,
                        option.arc_class,
                        option.dual_arc,
                    )
                )
        return found

    def arcs(self) -> Iterator[LayeredArc]:
        for node in self.nodes():
            yield from self.arcs_from(node)


def _moves(dual: InterdictionDual, parity: ParityLabels) -> Tuple[Tuple[Move, ...], ...]:
    moves: List[List[Move]] = [[] for _ in range(dual.num_nodes)]
    for a, arc in enumerate(dual.arcs):
        length = None if utils.is_inf(arc.length) else arc.length
        cost = None if utils.is_inf(arc.cost) else arc.cost
        # Free removal of a finite non-positive length changes nothing.
        if cost == 0 and length is not None and length <= 0:
            cost = None
        moves[arc.tail].append(Move(arc.head, length, cost, parity.labels[a], a))
    return tuple(tuple(m) for m in moves)


def build_layered_graph(
    dual: InterdictionDual, parity: ParityLabels, budget: int, clip_parity: bool = False
) -> LayeredBudgetGraph:
    """Parity runs over -|P|..|P|, or -ceil(|P|/2)..ceil(|P|/2) when clipped."""
    if budget < 0:
        raise utils.InstanceError(f"Budget must be non-negative, got {budget}")
    length = len(parity.path)
    bound = (length + 1) // 2 if clip_parity else length
    return LayeredBudgetGraph(dual, parity, budget, bound, _moves(dual, parity))


# **********************************************************
# Level-by-level shortest paths.
# **********************************************************
@attrs.frozen
class ClosedWalk:
    """Shortest walks from (start, top, 0) to (start, level, 1) for every level.

    `values[level]` is the walk length (budget engine) or the budget spent
    (length engine); None when no such walk exists.
    """

    start: int
    top: int
    values: Tuple[Optional[int], ...]
    pred: Dict[LayeredNode, Tuple[LayeredNode, int, bool]] = attrs.field(
        repr=False, eq=False
    )

    @property
    def length(self) -> ExtInt:
        value = self.values[0]
        return INF if value is None else value

    def steps(self, level: int) -> List[Tuple[int, bool]]:
        """Dual arcs of the walk ending at `level`, each with its removal flag."""
        if self.values[level] is None:
            raise utils.PlanarIntError(f"No closed walk ends at level {level}")
        origin = (self.start, self.top, 0)
        node = (self.start, level, 1)
        steps: List[Tuple[int, bool]] = []
        while node != origin:
            node, arc, removed = self.pred[node]
            if arc >= 0:
                steps.append((arc, removed))
        steps.reverse()
        return steps


def _relax(
    levels: List[Dict[Tuple[int, int], int]],
    pred: Dict[LayeredNode, Tuple[LayeredNode, int, bool]],
    node: LayeredNode,
    value: int,
    entry: Tuple[LayeredNode, int, bool],
) -> bool:
    v, level, p = node
    dist = levels[level]
    if (v, p) in dist and dist[(v, p)] <= value:
        return False
    dist[(v, p)] = value
    pred[node] = entry
    return True


def _level_search(
    layered: LayeredBudgetGraph,
    start: int,
    top: int,
    price: Callable[[LayeredOption], Tuple[int, int]],
    cap: Optional[int] = None,
) -> ClosedWalk:
    """Dijkstra per level, from level `top` down to 0.

    `price(option)` gives (levels dropped, value added) for an option; the
    value may not exceed `cap`. Waiting drops one level at no value.
    Among walks of equal value the one found first wins; the heap pops the
    smallest (value, node, parity), so the result is deterministic but not
    the lexicographically smallest node sequence.
    """
    levels: List[Dict[Tuple[int, int], int]] = [{} for _ in range(top + 1)]
    pred: Dict[LayeredNode, Tuple[LayeredNode, int, bool]] = {}
    levels[top][(start, 0)] = 0
    values: List[Optional[int]] = [None] * (top + 1)
    for level in range(top, -1, -1):
        dist = levels[level]
        heap = [(d, v, p) for (v, p), d in dist.items()]
        heapq.heapify(heap)
        settled = set()
        while heap:
            d, v, p = heapq.heappop(heap)
            if (v, p) in settled:
                continue
            settled.add((v, p))
            node = (v, level, p)
            if level > 0:
                _relax(levels, pred, (v, level - 1, p), d, (node, -1, False))
            for option in layered.options(v, p):
                drop, added = price(option)
                value = d + added
                if drop > level or (cap is not None and value > cap):
                    continue
                target = level - drop
                head = (option.head, target, option.parity)
                entry = (node, option.dual_arc, option.arc_class in _REMOVED_CLASSES)
                if _relax(levels, pred, head, value, entry) and target == level:
                    heapq.heappush(heap, (value, option.head, option.parity))
        values[level] = dist.get((start, 1))
    return ClosedWalk(start, top, tuple(values), pred)


def solve_closed_walk(layered: LayeredBudgetGraph, start: int) -> ClosedWalk:
    """Shortest walk (start, B, 0) -> (start, b, 1) in the layered graph, for all b."""
    return _level_search(
        layered, start, layered.budget, lambda option: (option.cost, option.length)
    )


def _length_ceiling(dual: InterdictionDual) -> int:
    return sum(
        arc.length
        for arc in dual.arcs
        if not utils.is_inf(arc.length) and arc.length > 0
    )


def solve_closed_walk_by_length(
    layered: LayeredBudgetGraph, start: int, top: int
) -> ClosedWalk:
    """Role-reversed search: levels are remaining length, values are budget spent."""
    return _level_search(
        layered, start, top, lambda option: (option.length, option.cost), cap=layered.budget
    )


# **********************************************************
# Witness circuits and interdiction sets.
# **********************************************************
@attrs.frozen
class WitnessStep:
    kind: DualArcKind
    primal: int
    removed: bool
    dual_arc: int


@attrs.frozen
class InterdictionSet:
    """Removed arc and vertex positions with their total cost."""

    arcs: Tuple[int, ...] = ()
    vertices: Tuple[int, ...] = ()
    cost: int = 0

    def to_json(self, net: EmbeddedNetwork) -> Dict[str, Any]:
        return {
            "arcs": net.arc_ids(self.arcs),
            "vertices": net.vertex_ids(self.vertices),
            "cost": self.cost,
        }


@attrs.frozen
class InterdictionOutcome:
    budget: int
    nu_profile: Tuple[ExtInt, ...]
    interdiction: InterdictionSet
    cut_side: Tuple[int, ...]
    witness: Tuple[WitnessStep, ...] = ()
    witness_length: ExtInt = 0
    path: Tuple[int, ...] = ()
    profile_sets: Tuple[InterdictionSet, ...] = ()

    def to_json(self, net: EmbeddedNetwork) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "nu_profile": [utils.to_jsonable(v) for v in self.nu_profile],
            "interdiction": self.interdiction.to_json(net),
            "cut": {"side": net.vertex_ids(self.cut_side)},
            "witness": {
                "length": utils.to_jsonable(self.witness_length),
                "steps": [_step_json(net, step) for step in self.witness],
            },
        }
        if self.profile_sets:
            data["profile_sets"] = [s.to_json(net) for s in self.profile_sets]
        return data


def _step_json(net: EmbeddedNetwork, step: WitnessStep) -> Dict[str, Any]:
    entry: Dict[str, Any] = {"kind": step.kind.value, "removed": step.removed}
    if step.kind in (DualArcKind.FORWARD, DualArcKind.REVERSE):
        entry["arc_id"] = net.arcs[step.primal].id
    else:
        entry["vertex_id"] = net.vertices[step.primal].id
    return entry


def split_circuits(
    dual: InterdictionDual, steps: Sequence[Tuple[int, bool]]
) -> List[List[Tuple[int, bool]]]:
    """Splits a closed walk into circuits, closing each one as soon as a node repeats."""
    if not steps:
        return []
    first = dual.arcs[steps[0][0]].tail
    nodes = [first]
    where = {first: 0}
    pending: List[Tuple[int, bool]] = []
    circuits = []
    for step in steps:
        head = dual.arcs[step[0]].head
        pending.append(step)
        if head in where:
            i = where[head]
            circuits.append(pending[i:])
            del pending[i:]
            for node in nodes[i + 1 :]:
                del where[node]
            del nodes[i + 1 :]
        else:
            where[head] = len(nodes)
            nodes.append(head)
    return circuits


def kept_length(dual: InterdictionDual, steps: Iterable[Tuple[int, bool]]) -> ExtInt:
    return utils.ext_sum(dual.arcs[a].length for a, removed in steps if not removed)


def _pick_circuit(
    dual: InterdictionDual, parity: ParityLabels, steps: Sequence[Tuple[int, bool]]
) -> List[Tuple[int, bool]]:
    candidates = [
        c for c in split_circuits(dual, steps) if parity.of(a for a, _r in c) == 1
    ]
    if not candidates:
        utils.log_warning("No circuit of parity 1 in the optimal walk; using the whole walk")
        return list(steps)
    return min(candidates, key=lambda c: kept_length(dual, c))


def removal_set(
    net: EmbeddedNetwork, dual: InterdictionDual, steps: Iterable[Tuple[int, bool]]
) -> InterdictionSet:
    """Primal arcs of removed forward arcs plus vertices entered by paying their cost."""
    index = net.index
    arcs = set()
    vertices = set()
    for a, removed in steps:
        arc = dual.arcs[a]
        if not removed:
            continue
        if arc.kind is DualArcKind.FORWARD:
            arcs.add(arc.primal)
        elif arc.kind is DualArcKind.ENTER:
            vertices.add(arc.primal)
    cost = sum(index.arc_cost[e] for e in arcs) + sum(index.vertex_cost[v] for v in vertices)
    return InterdictionSet(tuple(sorted(arcs)), tuple(sorted(vertices)), cost)


def prune_set(
    net: EmbeddedNetwork,
    found: InterdictionSet,
    target: ExtInt,
    use_vertex_capacities: bool = False,
) -> InterdictionSet:
    """Drops every component whose removal does not help, in ascending id order."""
    index = net.index
    arcs = sorted(found.arcs, key=lambda e: net.arcs[e].id)
    vertices = sorted(found.vertices, key=lambda v: net.vertices[v].id)
    achieved = oracle.max_flow_value(net, arcs, vertices, use_vertex_capacities)
    if achieved != target:
        raise utils.OracleMismatch(
            f"Interdiction set leaves flow {achieved}, expected {target}",
            diff={
                "expected": utils.to_jsonable(target),
                "actual": utils.to_jsonable(achieved),
                "arcs": net.arc_ids(arcs),
                "vertices": net.vertex_ids(vertices),
            },
        )
    for e in list(arcs):
        trial = [x for x in arcs if x != e]
        if oracle.max_flow_value(net, trial, vertices, use_vertex_capacities) == target:
            utils.log_to_output(f"Pruned arc {net.arcs[e].id}", utils.MessageType.Debug)
            arcs = trial
    for v in list(vertices):
        trial = [x for x in vertices if x != v]
        if oracle.max_flow_value(net, arcs, trial, use_vertex_capacities) == target:
            utils.log_to_output(f"Pruned vertex {net.vertices[v].id}", utils.MessageType.Debug)
            vertices = trial
    cost = sum(index.arc_cost[e] for e in arcs) + sum(index.vertex_cost[v] for v in vertices)
    return InterdictionSet(tuple(sorted(arcs)), tuple(sorted(vertices)), cost)


def residual_cut(
    net: EmbeddedNetwork, found: InterdictionSet, use_vertex_capacities: bool = False
) -> Tuple[int, ...]:
    """Source side of a minimum cut of G minus R; removed vertices count as inside."""
    lift = oracle.build_lift(net, found.arcs, found.vertices, use_vertex_capacities)
    _value, side = oracle.min_cut(lift)
    positions = {net.index.vertex_pos[x] for x in side} | set(found.vertices)
    return tuple(sorted(positions))


# **********************************************************
# Solver.
# **********************************************************
def _without_vertex_costs(net: EmbeddedNetwork) -> EmbeddedNetwork:
    return attrs.evolve(net, vertices=[attrs.evolve(v, cost=INF) for v in net.vertices])


def _check_instance(net: EmbeddedNetwork, mode: str) -> EmbeddedNetwork:
    if mode not in MODES:
        raise utils.InstanceError(f"Unknown mode {mode!r}; expected one of {MODES}")
    net.single_pair()
    require_valid(net)
    if any(a.lower for a in net.arcs):
        raise utils.UnsupportedInstance("Lower bounds are not supported by the interdiction solver")
    if mode == ARCS_ONLY and any(not utils.is_inf(v.cost) for v in net.vertices):
        utils.log_warning("Ignoring vertex costs in arcs_only mode")
        net = _without_vertex_costs(net)
    return net


@attrs.frozen
class _Prepared:
    dual: InterdictionDual
    parity: ParityLabels
    layered: LayeredBudgetGraph
    starts: Tuple[int, ...]


def _prepare(
    net: EmbeddedNetwork,
    path: Sequence[int],
    budget: int,
    mode: str,
    use_vertex_capacities: bool,
    clip_parity: bool,
) -> _Prepared:
    index = net.index
    faces = trace_faces(net)
    has_caps = use_vertex_capacities and any(
        c is not None and not utils.is_inf(c) for c in index.capacity
    )
    if mode == WITH_VERTICES or has_caps:
        dual = build_modified_dual(net, faces)
        if has_caps:
            dual = add_vertex_capacity_gadget(dual, net)
        parity = assign_extended_parity(dual, net, path)
    else:
        dual = build_dual(net, faces)
        parity = assign_parity(dual, net, path)
    layered = build_layered_graph(dual, parity, budget, clip_parity)
    starts = {dual.arcs[dual.forward_of[e]].tail for e in path}
    if dual.modified:
        starts |= {dual.vertex_node(index.head[e]) for e in path[:-1]}
    utils.log_to_output(
        f"Dual: {dual.num_nodes} nodes, {len(dual.arcs)} arcs; |P|={len(path)}; "
        f"{len(starts)} start nodes; parity bound {layered.parity_bound}",
        utils.MessageType.Debug,
    )
    return _Prepared(dual, parity, layered, tuple(sorted(starts)))


def _trivial_outcome(net: EmbeddedNetwork, budget: int, s: int) -> InterdictionOutcome:
    return InterdictionOutcome(
        budget=budget,
        nu_profile=tuple(0 for _ in range(budget + 1)),
        interdiction=InterdictionSet(),
        cut_side=tuple(reachable_from(net, s)),
        profile_sets=(),
    )


def solve_st_interdiction(
    net: EmbeddedNetwork,
    budget: int,
    mode: str = ARCS_ONLY,
    *,
    use_vertex_capacities: bool = False,
    clip_parity: bool = False,
    prune: bool = True,
    engine: str = "budget",
    profile_sets: bool = False,
) -> InterdictionOutcome:
    """Optimal interdiction for every budget 0..B and an optimal set for B."""
    if engine not in ENGINES:
        raise utils.InstanceError(f"Unknown engine {engine!r}; expected one of {ENGINES}")
    net = _check_instance(net, mode)
    s, t = net.single_pair()
    try:
        path = st_path(net, s, t)
    except utils.Unreachable:
        utils.log_to_output("Sink unreachable; every budget leaves flow 0", utils.MessageType.Debug)
        return _trivial_outcome(net, budget, s)

    prepared = _prepare(net, path, budget, mode, use_vertex_capacities, clip_parity)
    layered = prepared.layered
    if engine == "budget":
        walks = utils.parallel_map(lambda st: solve_closed_walk(layered, st), prepared.starts)

        def _level(b: int) -> Callable[[ClosedWalk], Optional[int]]:
            return lambda walk: budget - b if walk.values[budget - b] is not None else None

        def _value(walk: ClosedWalk, level: int) -> int:
            return walk.values[level]

    else:
        top = _length_ceiling(prepared.dual)
        walks = utils.parallel_map(
            lambda st: solve_closed_walk_by_length(layered, st, top), prepared.starts
        )

        def _level(b: int) -> Callable[[ClosedWalk], Optional[int]]:
            def _highest(walk: ClosedWalk) -> Optional[int]:
                for level in range(top, -1, -1):
                    spent = walk.values[level]
                    if spent is not None and spent <= b:
                        return level
                return None

            return _highest

        def _value(walk: ClosedWalk, level: int) -> int:
            return top - level

    def _solution(b: int) -> Tuple[ExtInt, Optional[Tuple[ClosedWalk, int]]]:
        candidates = []
        for walk in walks:
            level = _level(b)(walk)
            if level is not None:
                candidates.append((_value(walk, level), walk.start, walk, level))
        if not candidates:
            return INF, None
        value, _start, walk, level = min(candidates, key=lambda c: c[:2])
        return value, (walk, level)

    profile = []
    for b in range(budget + 1):
        value, _found = _solution(b)
        profile.append(value)
    utils.log_to_output(f"Interdiction profile: {profile}", utils.MessageType.Debug)

    def _extract(b: int) -> Tuple[InterdictionSet, List[Tuple[int, bool]]]:
        value, found = _solution(b)
        if found is None:
            return InterdictionSet(), []
        walk, level = found
        circuit = _pick_circuit(prepared.dual, prepared.parity, walk.steps(level))
        chosen = removal_set(net, prepared.dual, circuit)
        if prune:
            chosen = prune_set(net, chosen, value, use_vertex_capacities)
        return chosen, circuit

    chosen, circuit = _extract(budget)
    dual = prepared.dual
    witness = tuple(
        WitnessStep(dual.arcs[a].kind, dual.arcs[a].primal, removed, a) for a, removed in circuit
    )
    sets: Tuple[InterdictionSet, ...] = ()
    if profile_sets:
        sets = tuple(_extract(b)[0] for b in range(budget + 1))
    return InterdictionOutcome(
        budget=budget,
        nu_profile=tuple(profile),
        interdiction=chosen,
        cut_side=residual_cut(net, chosen, use_vertex_capacities),
        witness=witness,
        witness_length=kept_length(dual, circuit),
        path=tuple(path),
        profile_sets=sets,
    )


# **********************************************************
# Threshold and security questions.
# **********************************************************
def threshold_reduction(net: EmbeddedNetwork, capacity: int) -> EmbeddedNetwork:
    """Caps the flow at `capacity` with an unremovable arc in front of the source.

    With several sources but one sink, the arc is placed behind the sink.
    """
    vertex_id = max((v.id for v in net.vertices), default=-1) + 1
    arc_id = max((a.id for a in net.arcs), default=-1) + 1
    if len(net.sources) == 1:
        old = net.sources[0]
        arc = Arc(id=arc_id, tail=vertex_id, head=old, upper=capacity)
        new_end, old_end = TAIL, HEAD
    elif len(net.sinks) == 1:
        old = net.sinks[0]
        arc = Arc(id=arc_id, tail=old, head=vertex_id, upper=capacity)
        new_end, old_end = HEAD, TAIL
    else:
        raise utils.UnsupportedInstance("Threshold reduction needs a single source or sink")
    vertices = [
        attrs.evolve(v, rotation=v.rotation + (ArcEnd(arc_id, old_end),)) if v.id == old else v
        for v in net.vertices
    ]
    vertices.append(Vertex(id=vertex_id, rotation=(ArcEnd(arc_id, new_end),)))
    if len(net.sources) == 1:
        return EmbeddedNetwork(vertices, list(net.arcs) + [arc], [vertex_id], net.sinks)
    return EmbeddedNetwork(vertices, list(net.arcs) + [arc], net.sources, [vertex_id])


def decide_threshold(
    net: EmbeddedNetwork, budget: int, threshold: int, mode: str = ARCS_ONLY, **options: Any
) -> bool:
    """Whether nu_B(G) <= threshold, asked as a security question on the reduced network."""
    if threshold < 0:
        return False
    reduced = threshold_reduction(net, threshold + 1)
    outcome = solve_st_interdiction(reduced, budget, mode, prune=False, **options)
    if outcome.nu_profile[0] <= threshold:
        return True
    return outcome.nu_profile[budget] < outcome.nu_profile[0]


def single_pair_security(
    net: EmbeddedNetwork, max_budget: int, mode: str = ARCS_ONLY, **options: Any
) -> Tuple[Optional[int], Optional[InterdictionOutcome]]:
    """Smallest budget that lowers the maximum flow, with an outcome for it."""
    outcome = solve_st_interdiction(net, max_budget, mode, prune=False, **options)
    for b, value in enumerate(outcome.nu_profile):
        if value < outcome.nu_profile[0]:
            return b, solve_st_interdiction(net, b, mode, **options)
    return None, None
