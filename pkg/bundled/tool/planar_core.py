# Copyright (c) planarint contributors. All rights reserved.
# Licensed under the MIT License.
"""Embedded planar interdiction networks.

An instance carries its embedding as a rotation system: every vertex lists
its incident arc-endpoints in counterclockwise order. Faces are traced from
that rotation system, never computed from coordinates.

Internally arcs and vertices are addressed by their position in
`EmbeddedNetwork.arcs` / `EmbeddedNetwork.vertices`. Ids only matter for the
JSON format and for reporting.

Darts: arc ``e`` yields dart ``2 * e`` (leaving the tail, running along the
arc) and dart ``2 * e + 1`` (leaving the head, running against it).
"""
from __future__ import annotations

import functools
import json
import pathlib
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import attrs
import cattrs
import networkx as nx

import planarint_utils as utils
from planarint_utils import INF, ExtInt

TAIL = "tail"
HEAD = "head"


# **********************************************************
# Instance types.
# **********************************************************
@attrs.frozen
class ArcEnd:
    """One entry of a rotation: an arc and which of its ends sits here."""

    arc_id: int
    end: str = attrs.field(validator=attrs.validators.in_((TAIL, HEAD)))


@attrs.frozen
class Vertex:
    id: int
    rotation: Tuple[ArcEnd, ...] = attrs.field(default=(), converter=tuple)
    cost: ExtInt = INF
    demand: int = 0
    capacity: Optional[ExtInt] = None


@attrs.frozen
class Arc:
    id: int
    tail: int
    head: int
    upper: int
    lower: int = 0
    cost: ExtInt = INF


@attrs.frozen
class NetworkIndex:
    """Position-based arrays derived from an `EmbeddedNetwork`."""

    vertex_pos: Dict[int, int]
    arc_pos: Dict[int, int]
    tail: Tuple[int, ...]
    head: Tuple[int, ...]
    upper: Tuple[int, ...]
    lower: Tuple[int, ...]
    arc_cost: Tuple[ExtInt, ...]
    vertex_cost: Tuple[ExtInt, ...]
    demand: Tuple[int, ...]
    capacity: Tuple[Optional[ExtInt], ...]
    rotation: Tuple[Tuple[int, ...], ...]
    dart_pos: Tuple[int, ...]
    out_arcs: Tuple[Tuple[int, ...], ...]
    in_arcs: Tuple[Tuple[int, ...], ...]
    sources: Tuple[int, ...]
    sinks: Tuple[int, ...]
    rotation_problems: Tuple[str, ...]

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_cost)

    @property
    def num_arcs(self) -> int:
        return len(self.tail)

    def origin(self, dart: int) -> int:
        """Vertex a dart leaves from."""
        arc = dart >> 1
        return self.head[arc] if dart & 1 else self.tail[arc]


@attrs.define(frozen=True, slots=False)
class EmbeddedNetwork:
    """A planar interdiction network with its rotation system."""

    vertices: Tuple[Vertex, ...] = attrs.field(converter=tuple)
    arcs: Tuple[Arc, ...] = attrs.field(converter=tuple)
    sources: Tuple[int, ...] = attrs.field(default=(), converter=tuple)
    sinks: Tuple[int, ...] = attrs.field(default=(), converter=tuple)

    @functools.cached_property
    def index(self) -> NetworkIndex:
        return _build_index(self)

    def vertex_ids(self, positions: Iterable[int]) -> List[int]:
        return sorted(self.vertices[v].id for v in positions)

    def arc_ids(self, positions: Iterable[int]) -> List[int]:
        return sorted(self.arcs[e].id for e in positions)

    def single_pair(self) -> Tuple[int, int]:
        """Returns positions of the only source and the only sink."""
        if len(self.sources) != 1 or len(self.sinks) != 1:
            raise utils.UnsupportedInstance(
                "Expected exactly one source and one sink, got "
                f"{len(self.sources)} and {len(self.sinks)}"
            )
        return self.index.sources[0], self.index.sinks[0]


def _build_index(net: EmbeddedNetwork) -> NetworkIndex:
    vertex_pos: Dict[int, int] = {}
    for pos, vertex in enumerate(net.vertices):
        if vertex.id in vertex_pos:
            raise utils.InstanceError(f"Duplicate vertex id {vertex.id}")
        vertex_pos[vertex.id] = pos
    arc_pos: Dict[int, int] = {}
    for pos, arc in enumerate(net.arcs):
        if arc.id in arc_pos:
            raise utils.InstanceError(f"Duplicate arc id {arc.id}")
        if arc.tail not in vertex_pos or arc.head not in vertex_pos:
            raise utils.InstanceError(f"Arc {arc.id} references an unknown vertex")
        if arc.upper < 0 or arc.lower < 0:
            raise utils.InstanceError(f"Arc {arc.id} has a negative bound")
        arc_pos[arc.id] = pos

    def _positions(ids: Sequence[int], kind: str) -> Tuple[int, ...]:
        missing = [i for i in ids if i not in vertex_pos]
        if missing:
            raise utils.InstanceError(f"Unknown {kind} ids: {missing}")
        return tuple(vertex_pos[i] for i in ids)

    tail = tuple(vertex_pos[a.tail] for a in net.arcs)
    head = tuple(vertex_pos[a.head] for a in net.arcs)
    problems: List[str] = []
    dart_pos = [-1] * (2 * len(net.arcs))
    rotation: List[Tuple[int, ...]] = []
    for v, vertex in enumerate(net.vertices):
        darts: List[int] = []
        for entry in vertex.rotation:
            if entry.arc_id not in arc_pos:
                problems.append(f"vertex {vertex.id}: unknown arc {entry.arc_id}")
                continue
            arc = arc_pos[entry.arc_id]
            dart = 2 * arc + (1 if entry.end == HEAD else 0)
            owner = head[arc] if entry.end == HEAD else tail[arc]
            if owner != v:
                problems.append(
                    f"vertex {vertex.id}: {entry.end} of arc {entry.arc_id} "
                    "belongs to another vertex"
                )
                continue
            if dart_pos[dart] != -1:
                problems.append(
                    f"vertex {vertex.id}: {entry.end} of arc {entry.arc_id} "
                    "appears twice"
                )
                continue
            dart_pos[dart] = len(darts)
            darts.append(dart)
        rotation.append(tuple(darts))
    for dart, pos in enumerate(dart_pos):
        if pos == -1:
            end = HEAD if dart & 1 else TAIL
            problems.append(f"{end} of arc {net.arcs[dart >> 1].id} is missing")

    out_arcs: List[List[int]] = [[] for _ in net.vertices]
    in_arcs: List[List[int]] = [[] for _ in net.vertices]
    for e in range(len(net.arcs)):
        out_arcs[tail[e]].append(e)
        in_arcs[head[e]].append(e)

    return NetworkIndex(
        vertex_pos=vertex_pos,
        arc_pos=arc_pos,
        tail=tail,
        head=head,
        upper=tuple(a.upper for a in net.arcs),
        lower=tuple(a.lower for a in net.arcs),
        arc_cost=tuple(a.cost for a in net.arcs),
        vertex_cost=tuple(v.cost for v in net.vertices),
        demand=tuple(v.demand for v in net.vertices),
        capacity=tuple(v.capacity for v in net.vertices),
        rotation=tuple(rotation),
        dart_pos=tuple(dart_pos),
        out_arcs=tuple(tuple(a) for a in out_arcs),
        in_arcs=tuple(tuple(a) for a in in_arcs),
        sources=_positions(net.sources, "source"),
        sinks=_positions(net.sinks, "sink"),
        rotation_problems=tuple(problems),
    )


@attrs.frozen
class FaceStructure:
    """Faces of an embedded network.

    `faces[f]` is the boundary walk of face f as a dart sequence; the face of
    a dart is the face on its left. `corner_faces[v][j]` is the face in the
    corner between rotation entries j and j + 1 at vertex v.
    """

    faces: Tuple[Tuple[int, ...], ...]
    face_of_dart: Tuple[int, ...]
    left_face: Tuple[int, ...]
    right_face: Tuple[int, ...]
    corner_faces: Tuple[Tuple[int, ...], ...]

    @property
    def num_faces(self) -> int:
        return len(self.faces)


# **********************************************************
# JSON instance format.
# **********************************************************
def parse_instance(data: Any) -> EmbeddedNetwork:
    """Structures decoded JSON into an `EmbeddedNetwork`."""
    try:
        net = utils.CONVERTER.structure(data, EmbeddedNetwork)
        net.index  # pylint: disable=pointless-statement
    except utils.PlanarIntError:
        raise
    except (cattrs.BaseValidationError, KeyError, TypeError, ValueError) as exc:
        raise utils.InstanceError(
            f"Malformed instance: {utils.describe_structure_error(exc)}"
        ) from exc
    return net


def dump_instance(net: EmbeddedNetwork) -> Dict[str, Any]:
    """Unstructures a network into the JSON instance format."""
    data = utils.CONVERTER.unstructure(net)
    for vertex in data["vertices"]:
        if vertex.get("capacity") is None:
            vertex.pop("capacity", None)
    return data


def load_instance(path: Union[str, pathlib.Path]) -> EmbeddedNetwork:
    try:
        text = pathlib.Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise utils.InstanceError(f"{path}: cannot read instance ({exc})") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise utils.InstanceError(f"{path}: invalid JSON ({exc})") from exc
    return parse_instance(data)


def save_instance(net: EmbeddedNetwork, path: Union[str, pathlib.Path]) -> None:
    pathlib.Path(path).write_text(
        utils.dumps_json(dump_instance(net)) + "\n", encoding="utf-8"
    )


# **********************************************************
# Faces.
# **********************************************************
def next_dart(index: NetworkIndex, dart: int) -> int:
    """Successor of `dart` on the boundary walk of its left face."""
    twin = dart ^ 1
    rotation = index.rotation[index.origin(twin)]
    return rotation[index.dart_pos[twin] - 1]


def trace_faces(net: EmbeddedNetwork) -> FaceStructure:
    """Traces the face walks of the rotation system."""
    index = net.index
    if index.rotation_problems:
        raise utils.MalformedRotation("; ".join(index.rotation_problems))

    face_of = [-1] * (2 * index.num_arcs)
    faces: List[Tuple[int, ...]] = []
    for start in range(2 * index.num_arcs):
        if face_of[start] != -1:
            continue
        walk: List[int] = []
        dart = start
        while face_of[dart] == -1:
            face_of[dart] = len(faces)
            walk.append(dart)
            dart = next_dart(index, dart)
        faces.append(tuple(walk))

    corner_faces = tuple(
        tuple(face_of[dart] for dart in rotation) for rotation in index.rotation
    )
    return FaceStructure(
        faces=tuple(faces),
        face_of_dart=tuple(face_of),
        left_face=tuple(face_of[2 * e] for e in range(index.num_arcs)),
        right_face=tuple(face_of[2 * e + 1] for e in range(index.num_arcs)),
        corner_faces=corner_faces,
    )


def connected_components(net: EmbeddedNetwork) -> List[List[int]]:
    """Components of the underlying undirected graph, as sorted positions."""
    index = net.index
    graph = nx.MultiGraph()
    graph.add_nodes_from(range(index.num_vertices))
    graph.add_edges_from(zip(index.tail, index.head))
    return sorted(sorted(group) for group in nx.connected_components(graph))


# **********************************************************
# Validation.
# **********************************************************
@attrs.frozen
class ComponentReport:
    vertices: Tuple[int, ...]
    num_vertices: int
    num_arcs: int
    num_faces: int
    euler_ok: bool


@attrs.frozen
class ValidationReport:
    """Diagnostics produced by `validate`; ids, not positions."""

    rotation_problems: Tuple[str, ...]
    components: Tuple[ComponentReport, ...]
    bound_violations: Tuple[int, ...]
    arc_cost_violations: Tuple[int, ...]
    vertex_cost_violations: Tuple[int, ...]
    capacity_violations: Tuple[int, ...]
    demand_total: int
    demand_balanced: bool
    demand_sign_violations: Tuple[int, ...]
    terminal_cost_violations: Tuple[int, ...]
    terminal_overlap: Tuple[int, ...]

    @property
    def ok(self) -> bool:
        return (
            not self.rotation_problems
            and all(c.euler_ok for c in self.components)
            and not self.bound_violations
            and not self.arc_cost_violations
            and not self.vertex_cost_violations
            and not self.capacity_violations
            and self.demand_balanced
            and not self.demand_sign_violations
            and not self.terminal_cost_violations
            and not self.terminal_overlap
        )

    def problems(self) -> List[str]:
        """Human readable summary of every failed check."""
        found = list(self.rotation_problems)
        for comp in self.components:
            if not comp.euler_ok:
                found.append(
                    f"Euler check failed on component {list(comp.vertices)}: "
                    f"{comp.num_vertices} - {comp.num_arcs} + {comp.num_faces} != 2"
                )
        checks = (
            ("lower > upper on arcs", self.bound_violations),
            ("non-positive cost on arcs", self.arc_cost_violations),
            ("non-positive cost on vertices", self.vertex_cost_violations),
            ("negative capacity on vertices", self.capacity_violations),
            ("demand sign mismatch on vertices", self.demand_sign_violations),
            ("finite cost on terminals", self.terminal_cost_violations),
            ("vertices both source and sink", self.terminal_overlap),
        )
        for label, ids in checks:
            if ids:
                found.append(f"{label}: {list(ids)}")
        if not self.demand_balanced:
            found.append(f"demands sum to {self.demand_total}, expected 0")
        return found


def _bad_cost(cost: ExtInt) -> bool:
    return not utils.is_inf(cost) and cost < 1


def validate(net: EmbeddedNetwork) -> ValidationReport:
    """Checks an instance without raising; see `ValidationReport.ok`."""
    index = net.index
    components: List[ComponentReport] = []
    if not index.rotation_problems:
        faces = trace_faces(net)
        comp_of = {}
        groups = connected_components(net)
        for comp_id, comp in enumerate(groups):
            for v in comp:
                comp_of[v] = comp_id
        for comp_id, comp in enumerate(groups):
            arcs = [e for e in range(index.num_arcs) if comp_of[index.tail[e]] == comp_id]
            num_faces = len({faces.face_of_dart[2 * e] for e in arcs} | {
                faces.face_of_dart[2 * e + 1] for e in arcs
            })
            # An isolated vertex sits in one face of its own.
            if not arcs:
                num_faces = 1
            components.append(
                ComponentReport(
                    vertices=tuple(net.vertex_ids(comp)),
                    num_vertices=len(comp),
                    num_arcs=len(arcs),
                    num_faces=num_faces,
                    euler_ok=len(comp) - len(arcs) + num_faces == 2,
                )
            )

    terminals = set(index.sources) | set(index.sinks)
    sign_violations = []
    for v, demand in enumerate(index.demand):
        if v in index.sources and v in index.sinks:
            continue
        if v in index.sources:
            bad = demand > 0
        elif v in index.sinks:
            bad = demand < 0
        else:
            bad = demand != 0
        if bad:
            sign_violations.append(v)

    return ValidationReport(
        rotation_problems=index.rotation_problems,
        components=tuple(components),
        bound_violations=tuple(a.id for a in net.arcs if a.lower > a.upper),
        arc_cost_violations=tuple(a.id for a in net.arcs if _bad_cost(a.cost)),
        vertex_cost_violations=tuple(v.id for v in net.vertices if _bad_cost(v.cost)),
        capacity_violations=tuple(
            v.id
            for v in net.vertices
            if v.capacity is not None and not utils.is_inf(v.capacity) and v.capacity < 0
        ),
        demand_total=sum(index.demand),
        demand_balanced=sum(index.demand) == 0,
        demand_sign_violations=tuple(net.vertex_ids(sign_violations)),
        terminal_cost_violations=tuple(
            net.vertex_ids(v for v in terminals if not utils.is_inf(index.vertex_cost[v]))
        ),
        terminal_overlap=tuple(net.vertex_ids(set(index.sources) & set(index.sinks))),
    )


# **********************************************************
# Paths and cuts.
# **********************************************************
def arc_digraph(
    net: EmbeddedNetwork,
    blocked_arcs: Iterable[int] = (),
    blocked_vertices: Iterable[int] = (),
) -> nx.DiGraph:
    """Directed graph on vertex positions; each edge keeps the lowest arc joining its ends."""
    index = net.index
    arcs_out = set(blocked_arcs)
    vertices_out = set(blocked_vertices)
    graph = nx.DiGraph()
    graph.add_nodes_from(v for v in range(index.num_vertices) if v not in vertices_out)
    for e in range(index.num_arcs):
        tail, head = index.tail[e], index.head[e]
        if e in arcs_out or tail in vertices_out or head in vertices_out:
            continue
        if not graph.has_edge(tail, head):
            graph.add_edge(tail, head, arc=e)
    return graph


def st_path(net: EmbeddedNetwork, s: int, t: int) -> Tuple[int, ...]:
    """Directed s-t path with the fewest arcs (breadth-first, lowest arc first)."""
    if s == t:
        raise utils.InstanceError("Source and sink must differ")
    graph = arc_digraph(net)
    pred = dict(nx.bfs_predecessors(graph, s))
    if t not in pred:
        raise utils.Unreachable(
            f"Vertex {net.vertices[t].id} is not reachable from {net.vertices[s].id}"
        )
    path: List[int] = []
    v = t
    while v != s:
        path.append(graph[pred[v]][v]["arc"])
        v = pred[v]
    return tuple(reversed(path))


def reachable_from(
    net: EmbeddedNetwork,
    start: int,
    blocked_arcs: Iterable[int] = (),
    blocked_vertices: Iterable[int] = (),
) -> List[int]:
    """Vertices reachable from `start` along directed arcs, avoiding the blocked ones."""
    graph = arc_digraph(net, blocked_arcs, set(blocked_vertices) - {start})
    return sorted(nx.descendants(graph, start) | {start})


def cut_arcs(
    net: EmbeddedNetwork, side: Iterable[int]
) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Arcs leaving and entering the vertex set `side`."""
    index = net.index
    inside = set(side)
    leaving = tuple(
        e
        for e in range(index.num_arcs)
        if index.tail[e] in inside and index.head[e] not in inside
    )
    entering = tuple(
        e
        for e in range(index.num_arcs)
        if index.head[e] in inside and index.tail[e] not in inside
    )
    return leaving, entering


def cut_value(net: EmbeddedNetwork, side: Iterable[int]) -> int:
    """u(leaving arcs) - l(entering arcs) of the cut defined by `side`."""
    index = net.index
    leaving, entering = cut_arcs(net, side)
    return sum(index.upper[e] for e in leaving) - sum(index.lower[e] for e in entering)


def remove_components(
    net: EmbeddedNetwork,
    arcs: Iterable[int] = (),
    vertices: Iterable[int] = (),
    allow_terminals: bool = False,
) -> EmbeddedNetwork:
    """The network G minus R: removed vertices take their incident arcs along.

    Removed terminals (only with `allow_terminals`) leave the source and sink lists.
    """
    index = net.index
    gone_vertices = set(vertices)
    if not allow_terminals and gone_vertices & (set(index.sources) | set(index.sinks)):
        raise utils.InvalidInterdictionSet("Terminals cannot be removed")
    gone_arcs = set(arcs) | {
        e
        for e in range(index.num_arcs)
        if index.tail[e] in gone_vertices or index.head[e] in gone_vertices
    }
    gone_arc_ids = {net.arcs[e].id for e in gone_arcs}
    return EmbeddedNetwork(
        vertices=[
            attrs.evolve(
                vertex,
                rotation=[r for r in vertex.rotation if r.arc_id not in gone_arc_ids],
            )
            for v, vertex in enumerate(net.vertices)
            if v not in gone_vertices
        ],
        arcs=[arc for e, arc in enumerate(net.arcs) if e not in gone_arcs],
        sources=[x for x in net.sources if index.vertex_pos[x] not in gone_vertices],
        sinks=[x for x in net.sinks if index.vertex_pos[x] not in gone_vertices],
    )


def require_valid(net: EmbeddedNetwork) -> ValidationReport:
    """Runs `validate` and raises on the first class of failure a solver cares about."""
    report = validate(net)
    if report.terminal_cost_violations:
        raise utils.TerminalRemovable(
            f"Terminals {list(report.terminal_cost_violations)} have a finite cost"
        )
    if not report.ok:
        raise utils.ValidationFailed("; ".join(report.problems()), report)
    return report
