"""Text formats: edge lists, rotation systems, colorings, role maps, DOT.

Edge list: first non-comment line "n m", then m lines "u v".  Rotation file:
one line per vertex, in vertex order, listing its neighbors in cyclic order.
Coloring file: lines "vertex color".  Lines starting with '#' are comments.
"""

from __future__ import annotations

import json

from .coloring import Coloring, ColoringError
from .graph import Graph, GraphError, PlaneGraph, build_graph, build_plane_graph


def _data_lines(text: str) -> list[str]:
    return [
        line.strip()
        for line in text.splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    ]


def parse_edge_list(text: str) -> Graph:
    lines = _data_lines(text)
    if not lines:
        raise GraphError("edge-list file is empty")
    head = lines[0].split()
    if len(head) != 2:
        raise GraphError(f"expected header 'n m', got {lines[0]!r}")
    n, m = int(head[0]), int(head[1])
    if len(lines) - 1 != m:
        raise GraphError(f"header promises {m} edges, found {len(lines) - 1}")
    edges = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"malformed edge line {line!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return build_graph(n, edges)


def write_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def parse_rotation(text: str, g: Graph) -> PlaneGraph:
    # blank lines are data here: a vertex of degree 0 owns an empty line
    rows = [
        line for line in text.splitlines() if not line.lstrip().startswith("#")
    ]
    while len(rows) > g.n and not rows[-1].strip():
        rows.pop()
    if len(rows) != g.n:
        raise GraphError(f"rotation file has {len(rows)} rows for {g.n} vertices")
    rotation = [tuple(int(t) for t in row.split()) for row in rows]
    return build_plane_graph(g, rotation)


def write_rotation(pg: PlaneGraph) -> str:
    return "\n".join(" ".join(str(u) for u in row) for row in pg.rotation) + "\n"


def parse_coloring(text: str) -> Coloring:
    assignment: dict[int, int] = {}
    for line in _data_lines(text):
        parts = line.split()
        if len(parts) != 2:
            raise ColoringError(f"malformed coloring line {line!r}")
        v, c = int(parts[0]), int(parts[1])
        if v in assignment:
            raise ColoringError(f"vertex {v} colored twice")
        assignment[v] = c
    if not assignment:
        raise ColoringError("coloring file is empty")
    return Coloring(assignment, k=max(assignment.values()))


def write_coloring(c: Coloring) -> str:
    return "\n".join(f"{v} {col}" for v, col in c.as_sorted_items()) + "\n"


def write_roles(roles: dict[int, str]) -> str:
    return json.dumps({str(v): r for v, r in sorted(roles.items())}, indent=2) + "\n"


def parse_roles(text: str) -> dict[int, str]:
    raw = json.loads(text)
    return {int(v): r for v, r in raw.items()}


_DOT_FILL = (
    "white", "tomato", "skyblue", "palegreen", "gold",
    "orchid", "sandybrown", "turquoise", "hotpink", "gray70",
)


def to_dot(g: Graph, coloring: Coloring | None = None) -> str:
    """DOT export for visual inspection; colors map to fixed fill colors."""
    lines = ["graph G {", "  node [style=filled];"]
    for v in range(g.n):
        if coloring is not None:
            c = coloring.color(v)
            fill = _DOT_FILL[c % len(_DOT_FILL)]
            lines.append(f'  {v} [label="{v}:{c}" fillcolor="{fill}"];')
        else:
            lines.append(f"  {v};")
    for u, v in g.sorted_edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
