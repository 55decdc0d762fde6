# Copyright (c) planarint contributors. All rights reserved.
# Licensed under the MIT License.
"""k-densest subgraph on planar graphs as an interdiction problem.

Every edge of the input graph is subdivided by a sink that demands one unit.
The original vertices become unit-cost sources, so removing k of them lowers
the maximum flow by the number of edges they span.
"""
from __future__ import annotations

import json
import pathlib
from typing import Any, Dict, Iterable, List, Tuple, Union

import attrs
import cattrs

import planarint_utils as utils
from planar_core import HEAD, TAIL, Arc, ArcEnd, EmbeddedNetwork, Vertex


@attrs.frozen
class GraphVertex:
    id: int
    rotation: Tuple[int, ...] = attrs.field(default=(), converter=tuple)


@attrs.frozen
class GraphEdge:
    id: int
    u: int
    v: int


@attrs.frozen
class PlanarGraph:
    """Undirected graph with a rotation of edge ids per vertex."""

    vertices: Tuple[GraphVertex, ...] = attrs.field(converter=tuple)
    edges: Tuple[GraphEdge, ...] = attrs.field(converter=tuple)


def parse_graph(data: Any) -> PlanarGraph:
    try:
        return utils.CONVERTER.structure(data, PlanarGraph)
    except (cattrs.BaseValidationError, KeyError, TypeError, ValueError) as exc:
        raise utils.InstanceError(
            f"Malformed graph: {utils.describe_structure_error(exc)}"
        ) from exc


def dump_graph(graph: PlanarGraph) -> Dict[str, Any]:
    return utils.to_jsonable(graph)


def load_graph(path: Union[str, pathlib.Path]) -> PlanarGraph:
    try:
        data = json.loads(pathlib.Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise utils.InstanceError(f"{path}: cannot read graph ({exc})") from exc
    except json.JSONDecodeError as exc:
        raise utils.InstanceError(f"{path}: invalid JSON: {exc}") from exc
    return parse_graph(data)


def check_graph(graph: PlanarGraph) -> None:
    """Raises unless the graph is simple and its rotations list exactly the incident edges."""
    ids = [v.id for v in graph.vertices]
    if len(set(ids)) != len(ids):
        raise utils.InstanceError("Duplicate vertex ids")
    known = set(ids)
    seen_pairs = set()
    incident: Dict[int, List[int]] = {x: [] for x in ids}
    for edge in graph.edges:
        if edge.u not in known or edge.v not in known:
            raise utils.InstanceError(f"Edge {edge.id} uses an unknown vertex")
        if edge.u == edge.v:
            raise utils.NotSimpleGraph(f"Edge {edge.id} is a self-loop")
        pair = frozenset((edge.u, edge.v))
        if pair in seen_pairs:
            raise utils.NotSimpleGraph(f"Edge {edge.id} is parallel to another edge")
        seen_pairs.add(pair)
        incident[edge.u].append(edge.id)
        incident[edge.v].append(edge.id)
    for vertex in graph.vertices:
        if sorted(vertex.rotation) != sorted(incident[vertex.id]):
            raise utils.MalformedRotation(
                f"Rotation of vertex {vertex.id} does not list exactly its edges"
            )


@attrs.frozen
class KDenseEncoding:
    network: EmbeddedNetwork
    budget: int
    graph: PlanarGraph
    vertex_of: Dict[int, int]
    edge_of: Dict[int, int]


def encode_kdense(graph: PlanarGraph, k: int) -> KDenseEncoding:
    """Subdivides every edge in place; the subdivision vertex is a sink of demand 1."""
    check_graph(graph)
    if k < 0:
        raise utils.InstanceError(f"k must be non-negative, got {k}")
    base = max((v.id for v in graph.vertices), default=-1) + 1
    sink_of = {edge.id: base + i for i, edge in enumerate(graph.edges)}
    # arc ids: 2i from u, 2i + 1 from v into the sink of edge i
    half = {}
    arcs = []
    sinks = []
    for i, edge in enumerate(graph.edges):
        sink = sink_of[edge.id]
        for offset, end in enumerate((edge.u, edge.v)):
            arc_id = 2 * i + offset
            half[(end, edge.id)] = arc_id
            arcs.append(Arc(id=arc_id, tail=end, head=sink, upper=1))
        sinks.append(
            Vertex(
                id=sink,
                rotation=(ArcEnd(2 * i, HEAD), ArcEnd(2 * i + 1, HEAD)),
                demand=1,
            )
        )
    sources = [
        Vertex(
            id=v.id,
            rotation=tuple(ArcEnd(half[(v.id, e)], TAIL) for e in v.rotation),
            cost=1,
            demand=-len(v.rotation),
        )
        for v in graph.vertices
    ]
    network = EmbeddedNetwork(
        vertices=sources + sinks,
        arcs=arcs,
        sources=[v.id for v in graph.vertices],
        sinks=[s.id for s in sinks],
    )
    return KDenseEncoding(
        network=network,
        budget=k,
        graph=graph,
        vertex_of={v.id: v.id for v in graph.vertices},
        edge_of={sink: edge for edge, sink in sink_of.items()},
    )


def induced_edges(graph: PlanarGraph, chosen: Iterable[int]) -> int:
    inside = set(chosen)
    return sum(1 for e in graph.edges if e.u in inside and e.v in inside)


def decode_kdense(encoding: KDenseEncoding, removed: Iterable[int]) -> Tuple[List[int], int]:
    """Original vertices of a removal set (vertex ids), padded to k with the smallest ids."""
    chosen = sorted(set(removed))
    unknown = [x for x in chosen if x not in encoding.vertex_of]
    if unknown:
        raise utils.InvalidInterdictionSet(f"{unknown} are not original vertices")
    if len(chosen) > encoding.budget:
        raise utils.InvalidInterdictionSet(
            f"{len(chosen)} vertices exceed k={encoding.budget}"
        )
    vertices = {encoding.vertex_of[x] for x in chosen}
    for candidate in sorted(encoding.vertex_of.values()):
        if len(vertices) >= encoding.budget:
            break
        vertices.add(candidate)
    return sorted(vertices), induced_edges(encoding.graph, vertices)
