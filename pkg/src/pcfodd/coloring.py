"""Colorings and certificate-producing checkers for the three predicates.

A coloring is proper when adjacent vertices receive distinct colors.  It is
additionally conflict-free when every non-isolated vertex has a neighbor
whose color appears exactly once in its neighborhood, and odd when every
non-isolated vertex sees some color an odd number of times.  Isolated
vertices satisfy the conflict-free and odd conditions vacuously.

Checkers return a CertificateReport carrying per-vertex witnesses (the
smallest-id unique-color neighbor, or the smallest odd-multiplicity color)
and the full list of violations, so failures replay deterministically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .graph import Graph


class ColoringError(ValueError):
    """Raised for partial colorings and other violated preconditions."""


@dataclass(frozen=True)
class Coloring:
    """Total map vertex -> color, with a declared palette size k.

    Colors are positive integers.  For most constructors colors lie in
    [1, k]; restrict() recomputes k as the number of distinct colors kept,
    which is what downstream palette-size tests consume.
    """

    assignment: dict[int, int]
    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ColoringError(f"palette size must be >= 1, got {self.k}")
        for v, c in self.assignment.items():
            if c < 1:
                raise ColoringError(f"vertex {v} has non-positive color {c}")
        # detach from the caller's dict so instances stay safely shareable
        object.__setattr__(self, "assignment", dict(self.assignment))

    def color(self, v: int) -> int:
        return self.assignment[v]

    def colors_used(self) -> set[int]:
        return set(self.assignment.values())

    def num_colors_used(self) -> int:
        return len(set(self.assignment.values()))

    def as_sorted_items(self) -> list[tuple[int, int]]:
        return sorted(self.assignment.items())


def make_coloring(colors_by_vertex, k: int | None = None) -> Coloring:
    """Coloring from a dict or sequence; k defaults to the max color used."""
    if isinstance(colors_by_vertex, dict):
        assignment = dict(colors_by_vertex)
    else:
        assignment = {v: c for v, c in enumerate(colors_by_vertex)}
    if k is None:
        k = max(assignment.values(), default=1)
    return Coloring(assignment=assignment, k=k)


@dataclass(frozen=True)
class CertificateReport:
    """Verdict plus evidence for one checker run.

    witnesses maps each satisfied non-isolated vertex to its evidence:
    the smallest-id neighbor of unique color (conflict-free check) or the
    smallest color of odd multiplicity (odd check).  bad_edges lists
    monochromatic edges, bad_vertices the vertices lacking a witness.
    """

    verdict: bool
    witnesses: dict[int, int] = field(default_factory=dict)
    bad_edges: tuple[tuple[int, int], ...] = ()
    bad_vertices: tuple[int, ...] = ()

    def to_json(self) -> str:
        return json.dumps(
            {
                "verdict": self.verdict,
                "witnesses": {str(v): w for v, w in sorted(self.witnesses.items())},
                "violations": {
                    "edges": [list(e) for e in self.bad_edges],
                    "vertices": list(self.bad_vertices),
                },
            },
            sort_keys=True,
        )


def _require_total(g: Graph, c: Coloring) -> None:
    missing = [v for v in range(g.n) if v not in c.assignment]
    if missing:
        raise ColoringError(f"coloring is partial: vertices {missing[:8]} uncolored")


def _mono_edges(g: Graph, c: Coloring) -> tuple[tuple[int, int], ...]:
    a = c.assignment
    return tuple((u, v) for u, v in g.sorted_edges() if a[u] == a[v])


def check_proper(g: Graph, c: Coloring) -> CertificateReport:
    """Verdict true iff no edge is monochromatic."""
    _require_total(g, c)
    bad = _mono_edges(g, c)
    return CertificateReport(verdict=not bad, bad_edges=bad)


def check_pcf(g: Graph, c: Coloring) -> CertificateReport:
    """Proper conflict-free check: proper, and every non-isolated vertex has
    a neighbor whose color is unique in its neighborhood."""
    _require_total(g, c)
    a = c.assignment
    bad_edges = _mono_edges(g, c)
    witnesses: dict[int, int] = {}
    bad_vertices = []
    for v in range(g.n):
        if not g.adj[v]:
            continue
        counts: dict[int, int] = {}
        for w in g.adj[v]:
            counts[a[w]] = counts.get(a[w], 0) + 1
        witness = None
        for w in sorted(g.adj[v]):
            if counts[a[w]] == 1:
                witness = w
                break
        if witness is None:
            bad_vertices.append(v)
        else:
            witnesses[v] = witness
    return CertificateReport(
        verdict=not bad_edges and not bad_vertices,
        witnesses=witnesses,
        bad_edges=bad_edges,
        bad_vertices=tuple(bad_vertices),
    )


def check_odd(g: Graph, c: Coloring) -> CertificateReport:
    """Odd check: proper, and every non-isolated vertex sees some color an
    odd number of times."""
    _require_total(g, c)
    a = c.assignment
    bad_edges = _mono_edges(g, c)
    witnesses: dict[int, int] = {}
    bad_vertices = []
    for v in range(g.n):
        if not g.adj[v]:
            continue
        counts: dict[int, int] = {}
        for w in g.adj[v]:
            counts[a[w]] = counts.get(a[w], 0) + 1
        odd_colors = [col for col, cnt in counts.items() if cnt % 2 == 1]
        if odd_colors:
            witnesses[v] = min(odd_colors)
        else:
            bad_vertices.append(v)
    return CertificateReport(
        verdict=not bad_edges and not bad_vertices,
        witnesses=witnesses,
        bad_edges=bad_edges,
        bad_vertices=tuple(bad_vertices),
    )


CHECKERS = {"proper": check_proper, "pcf": check_pcf, "odd": check_odd}


def check(variant: str, g: Graph, c: Coloring) -> CertificateReport:
    try:
        checker = CHECKERS[variant]
    except KeyError:
        raise ColoringError(f"unknown variant {variant!r}") from None
    return checker(g, c)


def restrict_coloring(c: Coloring, keep) -> Coloring:
    """Restriction of c to a vertex subset.

    The palette size of the result is the number of distinct colors kept,
    which is the quantity the reduction suites compare against.
    """
    keep = set(keep)
    extra = keep - c.assignment.keys()
    if extra:
        raise ColoringError(f"restriction set contains uncolored vertices {sorted(extra)[:8]}")
    assignment = {v: c.assignment[v] for v in keep}
    return Coloring(assignment=assignment, k=max(len(set(assignment.values())), 1))
