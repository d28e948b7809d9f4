"""Core graph and plane-graph types: construction, structure tests, face tracing.

Vertices are dense integers 0..n-1.  All graphs are simple, finite and
undirected; constructions that add vertices append fresh ids at the end.
Graph and PlaneGraph are immutable after construction, so they can be shared
freely between concurrent tasks.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class GraphError(ValueError):
    """Raised for malformed graphs, rotations, or violated preconditions."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1."""

    n: int
    edges: frozenset[tuple[int, int]]
    adj: tuple[frozenset[int], ...]

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u] if 0 <= u < self.n else False

    def vertices(self) -> range:
        return range(self.n)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


def build_graph(n: int, edge_list) -> Graph:
    """Build a Graph from an edge list, deduplicating symmetric pairs.

    Rejects out-of-range endpoints and self-loops, naming the offending pair.
    """
    if n < 0:
        raise GraphError(f"vertex count must be >= 0, got {n}")
    edges = set()
    for pair in edge_list:
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u},{v}) has an endpoint outside [0,{n})")
        if u == v:
            raise GraphError(f"self-loop ({u},{v}) not allowed")
        edges.add((u, v) if u < v else (v, u))
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n=n, edges=frozenset(edges), adj=tuple(frozenset(s) for s in adj))


@dataclass(frozen=True)
class Bipartition:
    """Two disjoint sides covering all vertices, with no edge inside a side."""

    side_a: frozenset[int]
    side_b: frozenset[int]


@dataclass(frozen=True)
class DegreeProfile:
    degrees: tuple[int, ...]
    max_degree: int
    isolated: frozenset[int]
    even_degree: frozenset[int]


@dataclass(frozen=True)
class Face:
    """A face boundary as the closed walk of vertices, canonical start first.

    For 2-connected plane graphs the walk is a cycle without repeats; in
    general the walk length equals the number of directed edges traced.
    """

    boundary: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.boundary)


@dataclass(frozen=True)
class PlaneGraph:
    """A Graph together with a rotation system (cyclic neighbor order per vertex)."""

    graph: Graph
    rotation: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        g = self.graph
        if len(self.rotation) != g.n:
            raise GraphError(
                f"rotation has {len(self.rotation)} rows for {g.n} vertices"
            )
        for v in range(g.n):
            row = self.rotation[v]
            if len(row) != len(set(row)) or set(row) != set(g.adj[v]):
                raise GraphError(
                    f"rotation of vertex {v} is not a cyclic order of its neighbors"
                )


def build_plane_graph(g: Graph, rotation) -> PlaneGraph:
    return PlaneGraph(graph=g, rotation=tuple(tuple(row) for row in rotation))


def degree_profile(g: Graph) -> DegreeProfile:
    """Per-vertex degrees plus the derived sets used by the reductions."""
    degrees = tuple(len(g.adj[v]) for v in range(g.n))
    return DegreeProfile(
        degrees=degrees,
        max_degree=max(degrees, default=0),
        isolated=frozenset(v for v in range(g.n) if degrees[v] == 0),
        even_degree=frozenset(v for v in range(g.n) if degrees[v] % 2 == 0),
    )


def connected_components(g: Graph) -> list[list[int]]:
    """Components as sorted vertex lists, ordered by smallest vertex."""
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        stack = [s]
        seen[s] = True
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in g.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def bipartition(g: Graph) -> Bipartition | None:
    """Two-color g, or return None when an odd cycle is found.

    Deterministic on disconnected inputs: the lowest-id vertex of each
    component goes to side A.
    """
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] != -1:
            continue
        side[s] = 0
        queue = [s]
        while queue:
            v = queue.pop()
            for w in g.adj[v]:
                if side[w] == -1:
                    side[w] = 1 - side[v]
                    queue.append(w)
                elif side[w] == side[v]:
                    return None
    return Bipartition(
        side_a=frozenset(v for v in range(g.n) if side[v] == 0),
        side_b=frozenset(v for v in range(g.n) if side[v] == 1),
    )


def is_two_connected(g: Graph) -> bool:
    """True iff n > 2 and no single vertex removal disconnects g.

    Uses a lowpoint DFS for articulation vertices; the brute-force deletion
    definition is kept as the test oracle.
    """
    if g.n <= 2 or not is_connected(g):
        return False
    # iterative Tarjan articulation-point search rooted at 0
    disc = [-1] * g.n
    low = [0] * g.n
    parent = [-1] * g.n
    timer = 0
    root_children = 0
    stack = [(0, iter(g.adj[0]))]
    disc[0] = low[0] = timer
    timer += 1
    while stack:
        v, it = stack[-1]
        advanced = False
        for w in it:
            if disc[w] == -1:
                parent[w] = v
                disc[w] = low[w] = timer
                timer += 1
                if v == 0:
                    root_children += 1
                stack.append((w, iter(g.adj[w])))
                advanced = True
                break
            elif w != parent[v]:
                if disc[w] < low[v]:
                    low[v] = disc[w]
        if not advanced:
            stack.pop()
            if stack:
                p = stack[-1][0]
                if low[v] < low[p]:
                    low[p] = low[v]
                if p != 0 and low[v] >= disc[p]:
                    return False
    if root_children > 1:
        return False
    return True


def trace_faces(pg: PlaneGraph) -> list[Face]:
    """Trace all faces of an embedded connected graph via its rotation system.

    After arriving at v along the directed edge (u, v), the walk continues
    with the successor of u in v's rotation; this fixes one orientation for
    every boundary.  Each face is reported once, starting from its
    lexicographically smallest directed edge, and the list is sorted by that
    canonical edge.  Raises GraphError when Euler's formula n - m + f = 2
    fails, which signals an invalid rotation system.
    """
    g = pg.graph
    if not is_connected(g):
        raise GraphError("face tracing requires a connected graph")
    if g.n == 0:
        return []
    pos = [
        {u: i for i, u in enumerate(row)} for row in pg.rotation
    ]
    unused = {(u, v) for u, v in g.edges} | {(v, u) for u, v in g.edges}
    faces = []
    while unused:
        start = min(unused)
        walk = []
        u, v = start
        while True:
            walk.append(u)
            unused.discard((u, v))
            row = pg.rotation[v]
            w = row[(pos[v][u] + 1) % len(row)]
            u, v = v, w
            if (u, v) == start:
                break
        # rotate the walk so it starts at the lexicographically smallest
        # directed edge on the boundary
        best = 0
        for i in range(1, len(walk)):
            a = (walk[i], walk[(i + 1) % len(walk)])
            b = (walk[best], walk[(best + 1) % len(walk)])
            if a < b:
                best = i
        faces.append(Face(boundary=tuple(walk[best:] + walk[:best])))
    if g.m > 0 and g.n - g.m + len(faces) != 2:
        raise GraphError(
            f"Euler check failed: n={g.n} m={g.m} f={len(faces)}; "
            "rotation system is not a valid embedding"
        )
    faces.sort(key=lambda f: f.boundary[:2])
    return faces
