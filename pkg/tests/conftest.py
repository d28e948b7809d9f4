"""Shared graph builders, exhaustive enumerators, and hypothesis strategies."""

from __future__ import annotations

import itertools

from hypothesis import strategies as st

from pcfodd.graph import Graph, build_graph


def cycle(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves: int) -> Graph:
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete(n: int) -> Graph:
    return build_graph(n, list(itertools.combinations(range(n), 2)))


def pair_list(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


def graph_from_mask(n: int, mask: int) -> Graph:
    pairs = pair_list(n)
    return build_graph(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])


def all_labeled_graphs(n: int):
    for mask in range(1 << (n * (n - 1) // 2)):
        yield graph_from_mask(n, mask)


def sub1_complete(n: int) -> Graph:
    """1-subdivision of the complete graph, built directly (not via the
    reductions module) so tests of that module have an independent object."""
    edges = []
    nxt = n
    for u, v in itertools.combinations(range(n), 2):
        edges += [(u, nxt), (nxt, v)]
        nxt += 1
    return build_graph(nxt, edges)


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 7):
    n = draw(st.integers(min_n, max_n))
    npairs = n * (n - 1) // 2
    mask = draw(st.integers(0, (1 << npairs) - 1))
    return graph_from_mask(n, mask)


@st.composite
def graphs_with_colorings(draw, max_n: int = 6, max_k: int = 4):
    g = draw(graphs(max_n=max_n))
    k = draw(st.integers(1, max_k))
    colors = draw(st.lists(st.integers(1, k), min_size=g.n, max_size=g.n))
    from pcfodd.coloring import Coloring

    return g, Coloring({v: colors[v] for v in range(g.n)}, k=k)
