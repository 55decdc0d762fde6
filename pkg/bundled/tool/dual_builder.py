# Copyright (c) planarint contributors. All rights reserved.
# Licensed under the MIT License.
"""Interdiction duals of embedded networks.

Dual node numbering: faces come first (``0 .. num_faces - 1``); the modified
dual appends one node per primal vertex (``num_faces + v``).

The vertex layer is built per rotation corner. Corner ``j`` of vertex ``v``
lies between rotation entries ``j`` and ``j + 1``; a face touching ``v``
several times (at a cut vertex) owns several corners and gets one arc pair
per corner.
"""
from __future__ import annotations

import enum
from typing import Any, Dict, Iterable, List, Sequence, Set, Tuple

import attrs

import planarint_utils as utils
from planar_core import EmbeddedNetwork, FaceStructure, cut_arcs
from planarint_utils import INF, ExtInt


class DualArcKind(enum.Enum):
    FORWARD = "forward"
    REVERSE = "reverse"
    LEAVE = "leave"
    ENTER = "enter"
    CAPACITY = "capacity"


VERTEX_LAYER = (DualArcKind.LEAVE, DualArcKind.ENTER, DualArcKind.CAPACITY)


@attrs.frozen
class DualArc:
    """One dual arc.

    `primal` is an arc position for FORWARD/REVERSE arcs and a vertex
    position for vertex-layer arcs; `corner` is only set on the latter.
    """

    tail: int
    head: int
    length: ExtInt
    cost: ExtInt
    kind: DualArcKind
    primal: int
    corner: int = -1


@attrs.frozen
class InterdictionDual:
    num_faces: int
    num_nodes: int
    modified: bool
    arcs: Tuple[DualArc, ...]
    forward_of: Tuple[int, ...]
    reverse_of: Tuple[int, ...]
    mate: Tuple[int, ...]
    out_arcs: Tuple[Tuple[int, ...], ...]
    faces: FaceStructure

    def vertex_node(self, v: int) -> int:
        return self.num_faces + v

    def is_vertex_node(self, node: int) -> bool:
        return node >= self.num_faces

    def primal_vertex(self, node: int) -> int:
        return node - self.num_faces


@attrs.frozen
class ParityLabels:
    """Parity of every dual arc relative to the primal path `path`."""

    path: Tuple[int, ...]
    labels: Tuple[int, ...]

    def of(self, arcs: Iterable[int]) -> int:
        return sum(self.labels[a] for a in arcs)


def _assemble(
    faces: FaceStructure, num_nodes: int, modified: bool, arcs: Sequence[DualArc]
) -> InterdictionDual:
    forward_of: Dict[int, int] = {}
    reverse_of: Dict[int, int] = {}
    out_arcs: List[List[int]] = [[] for _ in range(num_nodes)]
    for a, arc in enumerate(arcs):
        out_arcs[arc.tail].append(a)
        if arc.kind is DualArcKind.FORWARD:
            forward_of[arc.primal] = a
        elif arc.kind is DualArcKind.REVERSE:
            reverse_of[arc.primal] = a
    mate = [-1] * len(arcs)
    for e, a in forward_of.items():
        mate[a] = reverse_of[e]
        mate[reverse_of[e]] = a
    return InterdictionDual(
        num_faces=faces.num_faces,
        num_nodes=num_nodes,
        modified=modified,
        arcs=tuple(arcs),
        forward_of=tuple(forward_of[e] for e in range(len(forward_of))),
        reverse_of=tuple(reverse_of[e] for e in range(len(reverse_of))),
        mate=tuple(mate),
        out_arcs=tuple(tuple(a) for a in out_arcs),
        faces=faces,
    )


def _primal_layer(net: EmbeddedNetwork, faces: FaceStructure) -> List[DualArc]:
    index = net.index
    arcs: List[DualArc] = []
    for e in range(index.num_arcs):
        right, left = faces.right_face[e], faces.left_face[e]
        arcs.append(
            DualArc(right, left, index.upper[e], index.arc_cost[e], DualArcKind.FORWARD, e)
        )
        arcs.append(DualArc(left, right, -index.lower[e], 0, DualArcKind.REVERSE, e))
    return arcs


def build_dual(net: EmbeddedNetwork, faces: FaceStructure) -> InterdictionDual:
    """The interdiction dual: e^D crosses e from right to left, e^D_R back."""
    return _assemble(faces, faces.num_faces, False, _primal_layer(net, faces))


def build_modified_dual(net: EmbeddedNetwork, faces: FaceStructure) -> InterdictionDual:
    """The interdiction dual plus one node per primal vertex.

    Every corner of v contributes (v, f*) with cost 0 and (f*, v) with cost
    c(v); both start at length INF, so passing through v requires paying c(v).
    """
    index = net.index
    arcs = _primal_layer(net, faces)
    for v in range(index.num_vertices):
        node = faces.num_faces + v
        for corner, face in enumerate(faces.corner_faces[v]):
            arcs.append(DualArc(node, face, INF, 0, DualArcKind.LEAVE, v, corner))
            arcs.append(
                DualArc(face, node, INF, index.vertex_cost[v], DualArcKind.ENTER, v, corner)
            )
    return _assemble(faces, faces.num_faces + index.num_vertices, True, arcs)


def add_vertex_capacity_gadget(
    dual: InterdictionDual, net: EmbeddedNetwork
) -> InterdictionDual:
    """Adds an unremovable (f*, v) arc of length u(v) per corner of every capacitated v."""
    if not dual.modified:
        raise utils.UnsupportedInstance("Vertex capacities need the modified dual")
    index = net.index
    terminals = set(index.sources) | set(index.sinks)
    arcs = list(dual.arcs)
    for v, capacity in enumerate(index.capacity):
        if capacity is None or utils.is_inf(capacity):
            continue
        if v in terminals:
            raise utils.GadgetOnTerminal(
                f"Terminal {net.vertices[v].id} carries vertex capacity {capacity}"
            )
        node = dual.vertex_node(v)
        for corner, face in enumerate(dual.faces.corner_faces[v]):
            arcs.append(DualArc(face, node, capacity, INF, DualArcKind.CAPACITY, v, corner))
    return _assemble(dual.faces, dual.num_nodes, True, arcs)


# **********************************************************
# Parity.
# **********************************************************
def _check_path(net: EmbeddedNetwork, path: Sequence[int]) -> None:
    index = net.index
    if not path:
        raise utils.PathNotInNetwork("Empty path")
    if any(not 0 <= e < index.num_arcs for e in path):
        raise utils.PathNotInNetwork(f"Path {list(path)} uses unknown arcs")
    visited = [index.tail[path[0]]]
    for prev, nxt in zip(path, path[1:]):
        if index.head[prev] != index.tail[nxt]:
            raise utils.PathNotInNetwork(f"Arcs {prev} and {nxt} are not consecutive")
    visited.extend(index.head[e] for e in path)
    if len(set(visited)) != len(visited):
        raise utils.PathNotInNetwork("Path repeats a vertex")


def assign_parity(
    dual: InterdictionDual, net: EmbeddedNetwork, path: Sequence[int]
) -> ParityLabels:
    """+1 on P^D, -1 on P^D_R, 0 elsewhere."""
    _check_path(net, path)
    labels = [0] * len(dual.arcs)
    for e in path:
        labels[dual.forward_of[e]] = 1
        labels[dual.reverse_of[e]] = -1
    return ParityLabels(tuple(path), tuple(labels))


def circuit_parity(labels: ParityLabels, arcs: Iterable[int]) -> int:
    return labels.of(arcs)


def left_corners(net: EmbeddedNetwork, in_arc: int, out_arc: int) -> Set[int]:
    """Corners swept counterclockwise from the outgoing to the incoming path arc."""
    index = net.index
    v = index.head[in_arc]
    degree = len(index.rotation[v])
    start = index.dart_pos[2 * out_arc]
    stop = index.dart_pos[2 * in_arc + 1]
    corners = set()
    corner = start
    while corner != stop:
        corners.add(corner)
        corner = (corner + 1) % degree
    return corners


def assign_extended_parity(
    dual: InterdictionDual, net: EmbeddedNetwork, path: Sequence[int]
) -> ParityLabels:
    """Parity on the modified dual.

    At every interior path vertex, vertex-layer arcs attached to a corner on
    the left of P get +1 when leaving v and -1 when entering v.
    """
    base = assign_parity(dual, net, path)
    labels = list(base.labels)
    if not dual.modified:
        return base
    left: Dict[int, Set[int]] = {}
    for in_arc, out_arc in zip(path, path[1:]):
        left[net.index.head[in_arc]] = left_corners(net, in_arc, out_arc)
    for a, arc in enumerate(dual.arcs):
        if arc.kind not in VERTEX_LAYER or arc.primal not in left:
            continue
        if arc.corner in left[arc.primal]:
            labels[a] = 1 if arc.kind is DualArcKind.LEAVE else -1
    return ParityLabels(base.path, tuple(labels))


# **********************************************************
# Cuts and debugging.
# **********************************************************
def cut_circuit(
    dual: InterdictionDual, net: EmbeddedNetwork, side: Iterable[int]
) -> Tuple[int, ...]:
    """C*(V'): e^D for arcs leaving `side`, e^D_R for arcs entering it."""
    leaving, entering = cut_arcs(net, side)
    return tuple(
        sorted([dual.forward_of[e] for e in leaving] + [dual.reverse_of[e] for e in entering])
    )


def dump_dual(dual: InterdictionDual, net: EmbeddedNetwork) -> Dict[str, Any]:
    """JSON-ready description of the dual, in primal ids."""
    nodes: List[Dict[str, Any]] = []
    for f, walk in enumerate(dual.faces.faces):
        nodes.append(
            {
                "id": f,
                "kind": "face",
                "boundary": [
                    {"arc_id": net.arcs[d >> 1].id, "along": not d & 1} for d in walk
                ],
            }
        )
    if dual.modified:
        for v, vertex in enumerate(net.vertices):
            nodes.append({"id": dual.vertex_node(v), "kind": "vertex", "vertex_id": vertex.id})
    arcs = []
    for a, arc in enumerate(dual.arcs):
        entry = {
            "id": a,
            "kind": arc.kind.value,
            "tail": arc.tail,
            "head": arc.head,
            "length": utils.to_jsonable(arc.length),
            "cost": utils.to_jsonable(arc.cost),
        }
        if arc.kind in VERTEX_LAYER:
            entry["vertex_id"] = net.vertices[arc.primal].id
            entry["corner"] = arc.corner
        else:
            entry["arc_id"] = net.arcs[arc.primal].id
        arcs.append(entry)
    return {"nodes": nodes, "arcs": arcs}
