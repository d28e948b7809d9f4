"""Gadget constructions and the constructive colorings ("lifts") they carry.

Every constructor returns a GadgetOutput: the built graph, a role map naming
each vertex (role grammar: "orig:<v>", "a:<i>", "b:<j>", "alpha:<l>",
"beta:<l>", "sub:<u>-<v>", "pendant:<v>", "apex:<t>", "tent:<f>:v:<i>",
"tent:<f>:l:<i>", "tent:<f>:center", "tent:<f>:w"), and, for lift
operations, an explicit coloring.  Lifts are self-validating: the returned
coloring has already passed the matching certificate checker, otherwise the
constructor raises.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coloring import CHECKERS, Coloring, check_pcf, check_proper, make_coloring
from .graph import Bipartition, Graph, GraphError, PlaneGraph, bipartition, build_graph, is_two_connected, trace_faces


@dataclass(frozen=True)
class GadgetOutput:
    graph: Graph
    roles: dict[int, str]
    coloring: Coloring | None = None

    def ids_by_role(self) -> dict[str, int]:
        return {role: v for v, role in self.roles.items()}


def _orig_roles(n: int) -> dict[int, str]:
    return {v: f"orig:{v}" for v in range(n)}


def subdivide(g: Graph, k: int) -> GadgetOutput:
    """k-subdivision: replace each edge by a path with k internal vertices.

    Internal vertices are appended in sorted-edge order; k = 0 returns an
    isomorphic copy.
    """
    if k < 0:
        raise GraphError(f"subdivision count must be >= 0, got {k}")
    roles = _orig_roles(g.n)
    if k == 0:
        return GadgetOutput(build_graph(g.n, g.sorted_edges()), roles)
    edges = []
    next_id = g.n
    for u, v in g.sorted_edges():
        path = [u]
        for j in range(1, k + 1):
            roles[next_id] = f"sub:{u}-{v}" if k == 1 else f"sub:{u}-{v}:{j}"
            path.append(next_id)
            next_id += 1
        path.append(v)
        edges.extend(zip(path, path[1:]))
    return GadgetOutput(build_graph(next_id, edges), roles)


def add_pendants_all(g: Graph) -> GadgetOutput:
    """Attach one pendant vertex to every vertex."""
    roles = _orig_roles(g.n)
    edges = list(g.sorted_edges())
    for v in range(g.n):
        roles[g.n + v] = f"pendant:{v}"
        edges.append((v, g.n + v))
    return GadgetOutput(build_graph(2 * g.n, edges), roles)


def add_universal_vertex(g: Graph) -> GadgetOutput:
    """Add one new vertex adjacent to all other vertices."""
    roles = _orig_roles(g.n)
    roles[g.n] = "apex:1"
    edges = list(g.sorted_edges()) + [(v, g.n) for v in range(g.n)]
    return GadgetOutput(build_graph(g.n + 1, edges), roles)


def add_pendants_even_degree(g: Graph) -> GadgetOutput:
    """Attach a pendant vertex to every vertex of even degree (0 included)."""
    roles = _orig_roles(g.n)
    edges = list(g.sorted_edges())
    next_id = g.n
    for v in range(g.n):
        if g.degree(v) % 2 == 0:
            roles[next_id] = f"pendant:{v}"
            edges.append((v, next_id))
            next_id += 1
    return GadgetOutput(build_graph(next_id, edges), roles)


def add_two_universal(g: Graph) -> GadgetOutput:
    """Add two adjacent new vertices, each adjacent to all original vertices."""
    roles = _orig_roles(g.n)
    roles[g.n] = "apex:1"
    roles[g.n + 1] = "apex:2"
    edges = list(g.sorted_edges()) + [(g.n, g.n + 1)]
    edges += [(v, g.n) for v in range(g.n)] + [(v, g.n + 1) for v in range(g.n)]
    return GadgetOutput(build_graph(g.n + 2, edges), roles)


def build_anchor_gadget(n: int, m: int) -> GadgetOutput:
    """Two triangle hubs with twin satellites; 2n+2m+6 vertices, 6n+6m+6 edges.

    Satellites a_1..a_2n each see the whole triangle alpha_1..alpha_3, and
    b_1..b_2m the triangle beta_1..beta_3.  Once subdivided and wired into a
    bipartite instance, the gadget pins all satellites to one shared color.
    """
    if n < 1 or m < 1:
        raise GraphError(f"anchor gadget needs n, m >= 1, got n={n} m={m}")
    roles: dict[int, str] = {}
    a = list(range(0, 2 * n))
    alpha = list(range(2 * n, 2 * n + 3))
    b = list(range(2 * n + 3, 2 * n + 3 + 2 * m))
    beta = list(range(2 * n + 3 + 2 * m, 2 * n + 6 + 2 * m))
    for i, v in enumerate(a, start=1):
        roles[v] = f"a:{i}"
    for l, v in enumerate(alpha, start=1):
        roles[v] = f"alpha:{l}"
    for j, v in enumerate(b, start=1):
        roles[v] = f"b:{j}"
    for l, v in enumerate(beta, start=1):
        roles[v] = f"beta:{l}"
    edges = []
    for v in a:
        edges += [(v, h) for h in alpha]
    for v in b:
        edges += [(v, h) for h in beta]
    edges += [(alpha[0], alpha[1]), (alpha[0], alpha[2]), (alpha[1], alpha[2])]
    edges += [(beta[0], beta[1]), (beta[0], beta[2]), (beta[1], beta[2])]
    return GadgetOutput(build_graph(2 * n + 2 * m + 6, edges), roles)


def _choose_sides(g: Graph, bip: Bipartition) -> tuple[list[int], list[int]]:
    """Pick (A, B) with |B| >= 2; ties go to the side holding the smallest id."""
    a, b = sorted(bip.side_a), sorted(bip.side_b)
    if len(a) >= 2 and len(b) >= 2:
        if len(a) > len(b):
            a, b = b, a
        elif len(a) == len(b):
            # vertex 0 sits in side_a, so the tie sends side_a to B
            a, b = b, a
    elif len(a) >= 2:
        a, b = b, a
    if not a or len(b) < 2:
        raise GraphError(
            "bipartite extension needs both sides nonempty with one of size >= 2; "
            "an edgeless input cannot be extended"
        )
    return a, b


def build_bipartite_extension(g: Graph) -> GadgetOutput:
    """Grow a bipartite g into the instance whose 4-colorability mirrors
    g's 3-colorability (CLI name: bip-tilde).

    Inputs with at most 3 vertices are returned unchanged.  Otherwise the
    result is g plus the subdivided anchor gadget, wired by: the i-th vertex
    of A to satellites a_{2i-1}, a_{2i}; the j-th of B to b_{2j-1}, b_{2j};
    and the three hub edges alpha_l b_l.  The output is checked bipartite.
    """
    bip = bipartition(g)
    if bip is None:
        raise GraphError("bipartite extension requires a bipartite input")
    if g.n <= 3:
        return GadgetOutput(build_graph(g.n, g.sorted_edges()), _orig_roles(g.n))
    side_a, side_b = _choose_sides(g, bip)
    gadget = build_anchor_gadget(len(side_a), len(side_b))
    sub = subdivide(gadget.graph, 1)
    off = g.n

    roles = _orig_roles(g.n)
    for v, role in sub.roles.items():
        if role.startswith("orig:"):
            roles[off + v] = gadget.roles[int(role.split(":")[1])]
        else:
            u, w = role.split(":")[1].split("-")
            roles[off + v] = f"sub:{off + int(u)}-{off + int(w)}"

    edges = list(g.sorted_edges())
    edges += [(off + u, off + v) for u, v in sub.graph.sorted_edges()]

    by_role = gadget.ids_by_role()
    for i, va in enumerate(side_a, start=1):
        edges.append((va, off + by_role[f"a:{2 * i - 1}"]))
        edges.append((va, off + by_role[f"a:{2 * i}"]))
    for j, vb in enumerate(side_b, start=1):
        edges.append((vb, off + by_role[f"b:{2 * j - 1}"]))
        edges.append((vb, off + by_role[f"b:{2 * j}"]))
    for l in range(1, 4):
        edges.append((off + by_role[f"alpha:{l}"], off + by_role[f"b:{l}"]))

    out = build_graph(g.n + sub.graph.n, edges)
    if bipartition(out) is None:
        raise RuntimeError("internal error: extension lost bipartiteness")
    return GadgetOutput(out, roles)


# Explicit table for the subdivided-K4 block, anchored at vertex 3.  The
# entry for the internal vertex between 1 and 2 must be 1: the variant
# table with color 4 there is still conflict-free but loses the
# private-witness property at vertex 1 (see tests).
ANCHOR_BLOCK_TABLE: dict[str, int] = {
    "orig:0": 1,
    "orig:1": 2,
    "orig:2": 3,
    "orig:3": 4,
    "sub:0-1": 3,
    "sub:0-2": 2,
    "sub:0-3": 2,
    "sub:1-2": 1,
    "sub:1-3": 3,
    "sub:2-3": 1,
}

ANCHOR_VERTEX = 3


def all_neighbor_colors_distinct(g: Graph, c: Coloring, v: int) -> bool:
    colors = [c.color(w) for w in g.adj[v]]
    return len(colors) == len(set(colors))


def private_witnesses_avoid_anchor(g: Graph, c: Coloring, anchor: int) -> bool:
    """Every degree-3 vertex other than the anchor has a uniquely-colored
    neighbor that avoids both the anchor's color and the anchor's
    neighborhood."""
    banned = set(g.adj[anchor]) | {anchor}
    for y in range(g.n):
        if y == anchor or g.degree(y) != 3:
            continue
        counts: dict[int, int] = {}
        for w in g.adj[y]:
            counts[c.color(w)] = counts.get(c.color(w), 0) + 1
        if not any(
            w not in banned and c.color(w) != c.color(anchor) and counts[c.color(w)] == 1
            for w in g.adj[y]
        ):
            return False
    return True


def anchor_block() -> GadgetOutput:
    """Subdivided K4 with its anchored 4-coloring.

    The coloring is conflict-free, the anchor vertex sees three distinct
    colors, and every other branch vertex keeps a private witness avoiding
    the anchor's color.  The builder refuses to ship a table violating any
    of those three checks.
    """
    k4 = build_graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    block = subdivide(k4, 1)
    assignment = {v: ANCHOR_BLOCK_TABLE[role] for v, role in block.roles.items()}
    coloring = Coloring(assignment, k=4)
    if not check_pcf(block.graph, coloring).verdict:
        raise RuntimeError("anchor block table is not conflict-free")
    if not all_neighbor_colors_distinct(block.graph, coloring, ANCHOR_VERTEX):
        raise RuntimeError("anchor block table repeats a color at the anchor")
    if not private_witnesses_avoid_anchor(block.graph, coloring, ANCHOR_VERTEX):
        raise RuntimeError("anchor block table loses a private witness")
    return GadgetOutput(block.graph, block.roles, coloring)


_HUB_PAIR_COLOR = {(1, 2): 3, (1, 3): 2, (2, 3): 1}
_SATELLITE_SIDE_COLOR = {1: 2, 2: 3, 3: 1}


def _role_kind(role: str) -> str:
    return role.split(":", 1)[0]


def lift_bipartite(g: Graph, c: Coloring, variant: str) -> GadgetOutput:
    """Turn a 3-color certificate of g into a 4-color certificate of its
    bipartite extension.

    Original vertices keep their colors, all satellites take color 4, the
    two hub triangles take 1,2,3, and every internal vertex is colored from
    the anchor-block table.  The output coloring must pass the same checker
    variant with 4 colors, otherwise the lift raises.
    """
    if variant not in ("pcf", "odd"):
        raise GraphError(f"lift variant must be pcf or odd, got {variant!r}")
    if g.n <= 3:
        raise GraphError("bipartite lift needs more than 3 vertices")
    if not c.colors_used() <= {1, 2, 3}:
        raise GraphError(f"lift needs colors within {{1,2,3}}, got {sorted(c.colors_used())}")
    isolated = [v for v in range(g.n) if not g.adj[v]]
    if isolated:
        raise GraphError(
            f"bipartite lift is undefined for isolated vertices {isolated[:8]}: "
            "their two satellite neighbors would share a color"
        )
    report = CHECKERS[variant](g, c)
    if not report.verdict:
        raise GraphError(
            f"input coloring fails the {variant} check: {report.to_json()}"
        )

    ext = build_bipartite_extension(g)
    roles = ext.roles
    assignment: dict[int, int] = {}
    for v, role in roles.items():
        kind = _role_kind(role)
        if kind == "orig":
            assignment[v] = c.color(int(role.split(":")[1]))
        elif kind in ("a", "b"):
            assignment[v] = 4
        elif kind in ("alpha", "beta"):
            assignment[v] = int(role.split(":")[1])
    for v, role in roles.items():
        if _role_kind(role) != "sub":
            continue
        u, w = (roles[x] for x in sorted(ext.graph.adj[v]))
        kinds = tuple(sorted((_role_kind(u), _role_kind(w))))
        if kinds == ("alpha", "alpha") or kinds == ("beta", "beta"):
            l1, l2 = sorted(int(r.split(":")[1]) for r in (u, w))
            assignment[v] = _HUB_PAIR_COLOR[(l1, l2)]
        elif kinds in (("a", "alpha"), ("b", "beta")):
            hub = u if _role_kind(u) in ("alpha", "beta") else w
            assignment[v] = _SATELLITE_SIDE_COLOR[int(hub.split(":")[1])]
        else:
            raise RuntimeError(f"internal error: unexpected subdivision context {kinds}")
    lifted = Coloring(assignment, k=4)
    out_report = CHECKERS[variant](ext.graph, lifted)
    if not out_report.verdict:
        raise RuntimeError(
            f"internal error: lifted coloring fails {variant}: {out_report.to_json()}"
        )
    return GadgetOutput(ext.graph, roles, lifted)


def attach_tents(pg: PlaneGraph) -> GadgetOutput:
    """Attach a tent inside every face of a 2-connected plane graph.

    For a face with boundary cycle length k the tent adds a cycle of length
    4k+2, one pendant per cycle vertex, a center adjacent to the whole
    cycle, an extra vertex adjacent to the center and to cycle vertices 1
    and 4k+2, and hooks the i-th boundary vertex to cycle vertices 4i-2 and
    4i: 8k+6 new vertices and 14k+9 new edges per face.  The result is
    returned as an abstract graph (planarity holds by construction).
    """
    g = pg.graph
    if not is_two_connected(g):
        raise GraphError("tents require a 2-connected plane graph")
    faces = trace_faces(pg)
    roles = _orig_roles(g.n)
    edges = list(g.sorted_edges())
    next_id = g.n
    for f, face in enumerate(faces):
        kf = len(face.boundary)
        cycle = list(range(next_id, next_id + 4 * kf + 2))
        next_id += 4 * kf + 2
        pend = list(range(next_id, next_id + 4 * kf + 2))
        next_id += 4 * kf + 2
        center = next_id
        extra = next_id + 1
        next_id += 2
        for i, v in enumerate(cycle, start=1):
            roles[v] = f"tent:{f}:v:{i}"
        for i, v in enumerate(pend, start=1):
            roles[v] = f"tent:{f}:l:{i}"
        roles[center] = f"tent:{f}:center"
        roles[extra] = f"tent:{f}:w"
        edges += list(zip(cycle, cycle[1:])) + [(cycle[-1], cycle[0])]
        edges += list(zip(cycle, pend))
        edges += [(center, v) for v in cycle]
        edges += [(extra, center), (extra, cycle[0]), (extra, cycle[-1])]
        for i, u in enumerate(face.boundary, start=1):
            edges.append((u, cycle[4 * i - 2 - 1]))
            edges.append((u, cycle[4 * i - 1]))
    return GadgetOutput(build_graph(next_id, edges), roles)


def lift_planar(pg: PlaneGraph, c: Coloring) -> GadgetOutput:
    """Turn a conflict-free 3-coloring of a 2-connected plane graph into a
    conflict-free 4-coloring of its tent extension.

    Tent centers take color 1, the extra vertices and all pendants color 2,
    and cycle vertices alternate 3 (odd position) / 4 (even position); the
    original vertices keep their colors.  Self-validating.
    """
    if not c.colors_used() <= {1, 2, 3}:
        raise GraphError(f"lift needs colors within {{1,2,3}}, got {sorted(c.colors_used())}")
    report = check_pcf(pg.graph, c)
    if not report.verdict:
        raise GraphError(f"input coloring is not conflict-free: {report.to_json()}")
    tents = attach_tents(pg)
    assignment: dict[int, int] = {}
    for v, role in tents.roles.items():
        parts = role.split(":")
        if parts[0] == "orig":
            assignment[v] = c.color(int(parts[1]))
        elif parts[2] == "center":
            assignment[v] = 1
        elif parts[2] in ("w", "l"):
            assignment[v] = 2
        else:
            assignment[v] = 3 if int(parts[3]) % 2 == 1 else 4
    lifted = Coloring(assignment, k=4)
    out_report = check_pcf(tents.graph, lifted)
    if not out_report.verdict:
        raise RuntimeError(
            f"internal error: tent lift fails the conflict-free check: {out_report.to_json()}"
        )
    return GadgetOutput(tents.graph, tents.roles, lifted)


def greedy_extend_subdivision(g: Graph, c: Coloring, k: int) -> GadgetOutput:
    """Extend a proper coloring of g to a conflict-free k-coloring of its
    1-subdivision, for k >= max(colors used, 5).

    Internal vertices are processed in ascending id order.  The vertex
    splitting edge xy takes the smallest color outside {c(x), c(y),
    protected(x), protected(y)}, where protected(w) is the color of w's
    first-colored internal neighbor; that color then stays unique around w.
    """
    report = check_proper(g, c)
    if not report.verdict:
        raise GraphError(f"greedy extension needs a proper coloring: {report.to_json()}")
    used = max(c.colors_used(), default=1)
    if k < max(used, 5):
        raise GraphError(f"palette {k} is below max(colors used, 5) = {max(used, 5)}")
    sub = subdivide(g, 1)
    assignment = {v: c.color(v) for v in range(g.n)}
    protected: dict[int, int] = {}
    for v in range(g.n, sub.graph.n):
        u, w = (int(t) for t in sub.roles[v].split(":")[1].split("-"))
        banned = {assignment[u], assignment[w], protected.get(u), protected.get(w)}
        color = next(col for col in range(1, k + 1) if col not in banned)
        assignment[v] = color
        protected.setdefault(u, color)
        protected.setdefault(w, color)
    extended = Coloring(assignment, k=k)
    out_report = check_pcf(sub.graph, extended)
    if not out_report.verdict:
        raise RuntimeError(
            f"internal error: greedy extension fails the conflict-free check: {out_report.to_json()}"
        )
    return GadgetOutput(sub.graph, sub.roles, extended)
