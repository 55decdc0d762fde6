# Copyright (c) planarint contributors. All rights reserved.
# Licensed under the MIT License.
"""
Utility functions for use with tests.
"""
import json
import pathlib
import subprocess
import sys
from typing import Any, Dict, List, Sequence, Tuple

import attrs

import planar_core
from planar_core import HEAD, TAIL, Arc, ArcEnd, EmbeddedNetwork, Vertex
from planarint_utils import INF

from .constants import CLI_SCRIPT, PROJECT_ROOT


def load_network(path: pathlib.Path) -> EmbeddedNetwork:
    """Loads a network fixture."""
    return planar_core.load_instance(path)


def parallel_network(uppers: Sequence[int], costs: Sequence[Any]) -> EmbeddedNetwork:
    """Source 0 and sink 1 joined by one arc per upper bound."""
    ids = range(len(uppers))
    return EmbeddedNetwork(
        vertices=[
            Vertex(id=0, rotation=[ArcEnd(e, TAIL) for e in ids]),
            Vertex(id=1, rotation=[ArcEnd(e, HEAD) for e in reversed(ids)]),
        ],
        arcs=[
            Arc(id=e, tail=0, head=1, upper=u, cost=c)
            for e, (u, c) in enumerate(zip(uppers, costs))
        ],
        sources=[0],
        sinks=[1],
    )


def with_demands(net: EmbeddedNetwork, demands: Dict[int, int]) -> EmbeddedNetwork:
    """Copy of `net` with the given vertex demands."""
    return attrs.evolve(
        net,
        vertices=[attrs.evolve(v, demand=demands.get(v.id, 0)) for v in net.vertices],
    )


def with_vertex_cost(net: EmbeddedNetwork, vertex_id: int, cost: Any) -> EmbeddedNetwork:
    return attrs.evolve(
        net,
        vertices=[
            attrs.evolve(v, cost=cost) if v.id == vertex_id else v for v in net.vertices
        ],
    )


def unremovable(net: EmbeddedNetwork) -> EmbeddedNetwork:
    return attrs.evolve(net, arcs=[attrs.evolve(a, cost=INF) for a in net.arcs])


def faces_as_arc_sets(net: EmbeddedNetwork) -> List[Tuple[int, ...]]:
    """Face boundaries as sorted arc ids, sorted."""
    faces = planar_core.trace_faces(net)
    return sorted(
        tuple(sorted(net.arcs[d >> 1].id for d in walk)) for walk in faces.faces
    )


def run_cli(args: Sequence[str]) -> Tuple[int, Any]:
    """Runs the command line tool and decodes its JSON output."""
    process = subprocess.run(
        [sys.executable, str(CLI_SCRIPT), *args],
        cwd=str(PROJECT_ROOT),
        capture_output=True,
        text=True,
        check=False,
    )
    output = process.stdout.strip()
    return process.returncode, json.loads(output) if output else None
