# Copyright (c) planarint contributors. All rights reserved.
# Licensed under the MIT License.
"""Seeded generators for embedded instances.

Every family starts from integer points and straight, non-crossing segments;
rotations are the incident segments sorted by angle. Identical arguments
give identical instances.
"""
from __future__ import annotations

import math
import random
from typing import Dict, List, Optional, Sequence, Tuple

import attrs
import networkx as nx

import planarint_utils as utils
from planar_core import HEAD, TAIL, Arc, ArcEnd, EmbeddedNetwork, Vertex
from planarint_utils import INF, ExtInt
from reductions import GraphEdge, GraphVertex, PlanarGraph

FAMILIES = ("grid", "wheel", "random_planar")
Point = Tuple[int, int]
Segment = Tuple[int, int]


@attrs.frozen
class GenOptions:
    terminals: str = attrs.field(
        default="single", validator=attrs.validators.in_(("single", "multi"))
    )
    vertex_costs: bool = False
    vertex_capacities: bool = False
    max_capacity: int = 6
    arc_costs: Tuple[ExtInt, ...] = (1, 2, 3, INF)
    vertex_cost_choices: Tuple[ExtInt, ...] = (1, 2, INF)
    capacity_choices: Tuple[ExtInt, ...] = (1, 2, 3, 4, INF)
    extra_edge_probability: float = 0.5
    max_edges: Optional[int] = None
    flow_units: int = 3


# **********************************************************
# Geometry.
# **********************************************************
def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    return (
        _cross(a, b, p) == 0
        and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def _conflicts(points: Sequence[Point], s: Segment, t: Segment) -> bool:
    """Whether two segments meet anywhere except at a shared endpoint."""
    a, b = points[s[0]], points[s[1]]
    c, d = points[t[0]], points[t[1]]
    shared = set(s) & set(t)
    if shared:
        if len(shared) == 2:
            return True
        # Collinear overlap beyond the shared endpoint.
        other_s = b if s[0] in shared else a
        other_t = d if t[0] in shared else c
        return _on_segment(other_s, c, d) or _on_segment(other_t, a, b)
    d1, d2 = _cross(a, b, c), _cross(a, b, d)
    d3, d4 = _cross(c, d, a), _cross(c, d, b)
    if ((d1 > 0) != (d2 > 0)) and d1 and d2 and ((d3 > 0) != (d4 > 0)) and d3 and d4:
        return True
    return (
        _on_segment(c, a, b) or _on_segment(d, a, b) or _on_segment(a, c, d) or _on_segment(b, c, d)
    )


def _passes_point(points: Sequence[Point], segment: Segment) -> bool:
    a, b = points[segment[0]], points[segment[1]]
    return any(
        _on_segment(p, a, b) for i, p in enumerate(points) if i not in segment
    )


def _greedy_triangulation(points: Sequence[Point]) -> List[Segment]:
    """Non-crossing segments inserted shortest first."""
    candidates = sorted(
        (
            (points[i][0] - points[j][0]) ** 2 + (points[i][1] - points[j][1]) ** 2,
            i,
            j,
        )
        for i in range(len(points))
        for j in range(i + 1, len(points))
    )
    chosen: List[Segment] = []
    for _length, i, j in candidates:
        segment = (i, j)
        if _passes_point(points, segment):
            continue
        if any(_conflicts(points, segment, other) for other in chosen):
            continue
        chosen.append(segment)
    return chosen


def _bfs_tree(
    num_points: int, segments: Sequence[Segment], root: int
) -> Tuple[set, Dict[int, int]]:
    graph = nx.Graph()
    graph.add_nodes_from(range(num_points))
    for k, (i, j) in enumerate(segments):
        graph.add_edge(i, j, segment=k)
    tree = {graph[v][w]["segment"] for v, w in nx.bfs_edges(graph, root)}
    return tree, dict(nx.single_source_shortest_path_length(graph, root))


def _thin(
    points: Sequence[Point], segments: List[Segment], rng: random.Random, options: GenOptions
) -> List[Segment]:
    """Keeps a spanning tree plus random extra segments."""
    tree, _depth = _bfs_tree(len(points), segments, 0)
    kept = [s for k, s in enumerate(segments) if k in tree]
    extras = [s for k, s in enumerate(segments) if k not in tree]
    for segment in extras:
        if options.max_edges is not None and len(kept) >= options.max_edges:
            break
        if rng.random() < options.extra_edge_probability:
            kept.append(segment)
    return sorted(kept)


def _rotation_order(points: Sequence[Point], segments: Sequence[Segment]) -> List[List[int]]:
    """Segment indices around every point, counterclockwise by angle."""
    around: List[List[Tuple[float, int]]] = [[] for _ in points]
    for k, (i, j) in enumerate(segments):
        for a, b in ((i, j), (j, i)):
            dx = points[b][0] - points[a][0]
            dy = points[b][1] - points[a][1]
            around[a].append((math.atan2(dy, dx), k))
    return [[k for _angle, k in sorted(entries)] for entries in around]


# **********************************************************
# Networks.
# **********************************************************
def _route_demands(
    num_points: int,
    arcs: Sequence[Tuple[int, int]],
    rng: random.Random,
    units: int,
) -> Tuple[List[int], List[int]]:
    """Routes unit flows along random directed paths; returns (flow per arc, demand)."""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(num_points))
    for k, (tail, head) in enumerate(arcs):
        if not graph.has_edge(tail, head):
            graph.add_edge(tail, head, arc=k)
    flow = [0] * len(arcs)
    demand = [0] * num_points
    for _ in range(units):
        start = rng.randrange(num_points)
        pred = dict(nx.bfs_predecessors(graph, start))
        targets = sorted(pred)
        if not targets:
            continue
        end = rng.choice(targets)
        v = end
        while v != start:
            flow[graph[pred[v]][v]["arc"]] += 1
            v = pred[v]
        demand[start] -= 1
        demand[end] += 1
    return flow, demand


def _network(
    points: Sequence[Point],
    segments: Sequence[Segment],
    rng: random.Random,
    options: GenOptions,
) -> EmbeddedNetwork:
    n = len(points)
    if options.terminals == "single":
        s = min(range(n), key=lambda v: (points[v], v))
        t = max(range(n), key=lambda v: (points[v], v))
    else:
        s = 0
    tree, depth = _bfs_tree(n, segments, s)
    arcs: List[Tuple[int, int]] = []
    for k, (i, j) in enumerate(segments):
        if depth.get(i, 0) > depth.get(j, 0) or (
            depth.get(i, 0) == depth.get(j, 0) and rng.random() < 0.5
        ):
            i, j = j, i
        if k not in tree and rng.random() < 0.2:
            i, j = j, i
        arcs.append((i, j))

    if options.terminals == "single":
        uppers = [rng.randint(1, options.max_capacity) for _ in arcs]
        demand = [0] * n
        sources, sinks = [s], [t]
    else:
        flow, demand = _route_demands(n, arcs, rng, options.flow_units)
        uppers = [f + rng.randint(0, 2) for f in flow]
        sources = [v for v in range(n) if demand[v] < 0]
        sinks = [v for v in range(n) if demand[v] > 0]
    costs = [rng.choice(options.arc_costs) for _ in arcs]

    terminals = set(sources) | set(sinks)
    rotation = _rotation_order(points, segments)
    vertices = []
    for v in range(n):
        cost: ExtInt = INF
        capacity: Optional[ExtInt] = None
        if v not in terminals:
            if options.vertex_costs:
                cost = rng.choice(options.vertex_cost_choices)
            if options.vertex_capacities:
                capacity = rng.choice(options.capacity_choices)
        vertices.append(
            Vertex(
                id=v,
                rotation=tuple(ArcEnd(k, TAIL if arcs[k][0] == v else HEAD) for k in rotation[v]),
                cost=cost,
                demand=demand[v],
                capacity=capacity,
            )
        )
    return EmbeddedNetwork(
        vertices=vertices,
        arcs=[
            Arc(id=k, tail=tail, head=head, upper=uppers[k], cost=costs[k])
            for k, (tail, head) in enumerate(arcs)
        ],
        sources=sources,
        sinks=sinks,
    )


def grid(rows: int, cols: int, seed: int = 0, options: GenOptions = GenOptions()) -> EmbeddedNetwork:
    if rows < 1 or cols < 1 or rows * cols < 2:
        raise utils.InstanceError(f"Grid {rows}x{cols} needs at least two vertices")
    points = [(c, r) for r in range(rows) for c in range(cols)]
    segments = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                segments.append((v, v + 1))
            if r + 1 < rows:
                segments.append((v, v + cols))
    return _network(points, sorted(segments), random.Random(seed), options)


def _rim_points(rim: int) -> List[Point]:
    return [
        (round(1000 * math.cos(2 * math.pi * k / rim)), round(1000 * math.sin(2 * math.pi * k / rim)))
        for k in range(rim)
    ]


def wheel(rim: int, seed: int = 0, options: GenOptions = GenOptions()) -> EmbeddedNetwork:
    """Hub at vertex 0 joined to every rim vertex, rim vertices joined in a cycle."""
    if rim < 3:
        raise utils.InstanceError(f"A wheel needs at least 3 rim vertices, got {rim}")
    points = [(0, 0)] + _rim_points(rim)
    segments = [(0, k) for k in range(1, rim + 1)]
    segments += [(k, k % rim + 1) if k < rim else (1, rim) for k in range(1, rim + 1)]
    return _network(points, sorted(set(segments)), random.Random(seed), options)


def _random_points(n: int, rng: random.Random) -> List[Point]:
    points: List[Point] = []
    while len(points) < n:
        p = (rng.randrange(4 * n), rng.randrange(4 * n))
        if p not in points:
            points.append(p)
    return points


def random_planar(n: int, seed: int = 0, options: GenOptions = GenOptions()) -> EmbeddedNetwork:
    if n < 2:
        raise utils.InstanceError(f"random_planar needs at least 2 vertices, got {n}")
    rng = random.Random(seed)
    points = _random_points(n, rng)
    segments = _thin(points, _greedy_triangulation(points), rng, options)
    return _network(points, segments, rng, options)


def random_planar_graph(n: int, seed: int = 0, extra_edge_probability: float = 0.5) -> PlanarGraph:
    """Undirected simple planar graph in the graph JSON shape."""
    if n < 1:
        raise utils.InstanceError(f"A graph needs at least one vertex, got {n}")
    rng = random.Random(seed)
    points = _random_points(n, rng)
    options = GenOptions(extra_edge_probability=extra_edge_probability)
    segments = _thin(points, _greedy_triangulation(points), rng, options) if n > 1 else []
    rotation = _rotation_order(points, segments)
    return PlanarGraph(
        vertices=[GraphVertex(id=v, rotation=tuple(rotation[v])) for v in range(n)],
        edges=[GraphEdge(id=k, u=i, v=j) for k, (i, j) in enumerate(segments)],
    )


def parse_size(family: str, size: str) -> Tuple[int, ...]:
    """`RxC` for grids, `N` for the other families."""
    try:
        if family == "grid":
            rows, cols = size.lower().split("x")
            return int(rows), int(cols)
        return (int(size),)
    except ValueError as exc:
        raise utils.InstanceError(f"Invalid size {size!r} for family {family}") from exc


def generate(family: str, size: str, seed: int = 0, options: GenOptions = GenOptions()) -> EmbeddedNetwork:
    if family not in FAMILIES:
        raise utils.InstanceError(f"Unknown family {family!r}; expected one of {FAMILIES}")
    dims = parse_size(family, size)
    if family == "grid":
        return grid(dims[0], dims[1], seed, options)
    if family == "wheel":
        return wheel(dims[0], seed, options)
    return random_planar(dims[0], seed, options)
