"""Gadget constructors: structural counts, role maps, and certified lifts."""

from __future__ import annotations

import random
import time
from collections import Counter

import pytest

from pcfodd.coloring import check_odd, check_pcf, make_coloring, restrict_coloring
from pcfodd.graph import (
    GraphError,
    bipartition,
    build_graph,
    build_plane_graph,
    degree_profile,
)
from pcfodd.reductions import (
    ANCHOR_BLOCK_TABLE,
    ANCHOR_VERTEX,
    add_pendants_all,
    add_pendants_even_degree,
    add_two_universal,
    add_universal_vertex,
    all_neighbor_colors_distinct,
    anchor_block,
    attach_tents,
    build_anchor_gadget,
    build_bipartite_extension,
    greedy_extend_subdivision,
    lift_bipartite,
    lift_planar,
    private_witnesses_avoid_anchor,
    subdivide,
)
from pcfodd.solver import chromatic_number, decide_coloring

from conftest import complete, cycle, graph_from_mask, pair_list, path, star


def natural_cycle_rotation(n):
    return [((i - 1) % n, (i + 1) % n) for i in range(n)]


def seeded_graphs(count, max_n, seed):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(1, max_n)
        edges = [p for p in pair_list(n) if rng.random() < 0.5]
        yield build_graph(n, edges)


class TestSubdivide:
    def test_triangle_becomes_hexagon(self):
        out = subdivide(complete(3), 1)
        assert out.graph.n == 6 and out.graph.m == 6
        assert set(degree_profile(out.graph).degrees) == {2}

    def test_k4_counts(self):
        out = subdivide(complete(4), 1)
        assert out.graph.n == 10 and out.graph.m == 12

    def test_zero_copies_the_graph(self):
        g = cycle(5)
        out = subdivide(g, 0)
        assert out.graph.edges == g.edges and out.roles[2] == "orig:2"

    def test_roles_name_split_edges(self):
        out = subdivide(path(3), 1)
        assert out.roles[3] == "sub:0-1" and out.roles[4] == "sub:1-2"

    def test_longer_paths_get_indexed_roles(self):
        out = subdivide(complete(2), 3)
        assert out.graph.n == 5 and out.graph.m == 4
        assert [out.roles[v] for v in (2, 3, 4)] == [
            "sub:0-1:1", "sub:0-1:2", "sub:0-1:3",
        ]

    def test_counts_over_random_inputs(self):
        for g in seeded_graphs(60, 8, seed=11):
            for k in (0, 1, 2):
                out = subdivide(g, k)
                assert out.graph.n == g.n + k * g.m
                assert out.graph.m == (k + 1) * g.m


class TestPendantAndApexConstructions:
    def test_pendants_all_counts(self):
        out = add_pendants_all(complete(3))
        assert out.graph.n == 6 and out.graph.m == 6

    def test_single_vertex_becomes_edge(self):
        out = add_pendants_all(graph_from_mask(1, 0))
        assert out.graph.n == 2 and out.graph.m == 1

    def test_apex_counts(self):
        out = add_universal_vertex(cycle(4))
        assert out.graph.n == 5 and out.graph.m == 8
        assert out.roles[4] == "apex:1"

    def test_apex_on_single_vertex(self):
        out = add_universal_vertex(graph_from_mask(1, 0))
        assert out.graph.n == 2 and out.graph.m == 1

    def test_even_degree_pendants_on_square(self):
        out = add_pendants_even_degree(cycle(4))
        assert out.graph.n == 8 and out.graph.m == 8

    def test_odd_degrees_untouched(self):
        out = add_pendants_even_degree(complete(2))
        assert out.graph.n == 2 and out.graph.m == 1

    def test_two_apex_on_single_vertex_gives_triangle(self):
        out = add_two_universal(graph_from_mask(1, 0))
        assert out.graph.n == 3 and out.graph.m == 3

    def test_two_apex_counts(self):
        out = add_two_universal(cycle(4))
        assert out.graph.n == 6 and out.graph.m == 13
        assert out.roles[4] == "apex:1" and out.roles[5] == "apex:2"

    def test_pendants_on_k4_need_exactly_four_colors(self):
        # chi(K4) = 4, so the bound allows {4, 5}; the solver pins 4
        h = add_pendants_all(complete(4)).graph
        assert chromatic_number(h, "pcf") == 4

    def test_counts_over_random_inputs(self):
        for g in seeded_graphs(60, 8, seed=12):
            evens = len(degree_profile(g).even_degree)
            assert add_pendants_all(g).graph.n == 2 * g.n
            assert add_pendants_all(g).graph.m == g.m + g.n
            assert add_universal_vertex(g).graph.m == g.m + g.n
            out = add_pendants_even_degree(g)
            assert out.graph.n == g.n + evens and out.graph.m == g.m + evens
            out = add_two_universal(g)
            assert out.graph.n == g.n + 2 and out.graph.m == g.m + 2 * g.n + 1


class TestAnchorGadget:
    def test_minimal_counts(self):
        out = build_anchor_gadget(1, 1)
        assert out.graph.n == 10 and out.graph.m == 18

    def test_two_two_counts(self):
        out = build_anchor_gadget(2, 2)
        assert out.graph.n == 14 and out.graph.m == 30

    def test_subdivided_counts(self):
        sub = subdivide(build_anchor_gadget(1, 1).graph, 1)
        assert sub.graph.n == 28 and sub.graph.m == 36

    def test_roles_cover_all_vertices(self):
        out = build_anchor_gadget(2, 3)
        kinds = Counter(r.split(":")[0] for r in out.roles.values())
        assert kinds == {"a": 4, "alpha": 3, "b": 6, "beta": 3}

    def test_rejects_empty_sides(self):
        with pytest.raises(GraphError):
            build_anchor_gadget(0, 2)


class TestBipartiteExtension:
    def test_path_counts(self):
        out = build_bipartite_extension(path(4))
        assert out.graph.n == 48 and out.graph.m == 74

    def test_small_inputs_returned_unchanged(self):
        g = path(3)
        out = build_bipartite_extension(g)
        assert out.graph.edges == g.edges and out.graph.n == 3

    def test_output_is_bipartite(self):
        out = build_bipartite_extension(cycle(6))
        assert bipartition(out.graph) is not None

    def test_closed_form_counts(self):
        for g in [path(4), cycle(6), star(3), cycle(4), path(6)]:
            out = build_bipartite_extension(g)
            sides = sorted(
                Counter(r.split(":")[0] for r in out.roles.values()).items()
            )
            na = dict(sides)["a"] // 2
            nb = dict(sides)["b"] // 2
            gadget_m = 6 * na + 6 * nb + 6
            assert out.graph.n == g.n + (2 * na + 2 * nb + 6) + gadget_m
            assert out.graph.m == g.m + 2 * gadget_m + 2 * na + 2 * nb + 3

    def test_star_side_choice_puts_leaves_on_b(self):
        out = build_bipartite_extension(star(3))
        kinds = Counter(r.split(":")[0] for r in out.roles.values())
        assert kinds["a"] == 2 and kinds["b"] == 6

    def test_odd_cycle_rejected(self):
        with pytest.raises(GraphError, match="bipartite"):
            build_bipartite_extension(cycle(5))

    def test_edgeless_rejected(self):
        with pytest.raises(GraphError, match="edgeless"):
            build_bipartite_extension(graph_from_mask(4, 0))


VARIANT_TABLE = dict(ANCHOR_BLOCK_TABLE, **{"sub:1-2": 4})


def compliant_coloring_exists(g, anchor, k=4):
    """Properness-pruned enumeration of all k-colorings, stopping at the
    first one that is conflict-free and has both anchor properties."""
    colors = [0] * g.n

    def ok_here(v, c):
        return all(colors[w] == 0 or colors[w] != c for w in g.adj[v])

    def rec(v):
        if v == g.n:
            coloring = make_coloring(colors[:], k=k)
            return (
                check_pcf(g, coloring).verdict
                and all_neighbor_colors_distinct(g, coloring, anchor)
                and private_witnesses_avoid_anchor(g, coloring, anchor)
            )
        for c in range(1, k + 1):
            if ok_here(v, c):
                colors[v] = c
                if rec(v + 1):
                    return True
                colors[v] = 0
        return False

    return rec(0)


class TestAnchorBlock:
    def test_shipped_table_satisfies_everything(self):
        blk = anchor_block()
        assert check_pcf(blk.graph, blk.coloring).verdict
        assert all_neighbor_colors_distinct(blk.graph, blk.coloring, ANCHOR_VERTEX)
        assert private_witnesses_avoid_anchor(blk.graph, blk.coloring, ANCHOR_VERTEX)

    def test_variant_table_is_conflict_free_but_loses_private_witness(self):
        blk = anchor_block()
        coloring = make_coloring(
            {v: VARIANT_TABLE[r] for v, r in blk.roles.items()}, k=4
        )
        assert check_pcf(blk.graph, coloring).verdict
        assert all_neighbor_colors_distinct(blk.graph, coloring, ANCHOR_VERTEX)
        assert not private_witnesses_avoid_anchor(blk.graph, coloring, ANCHOR_VERTEX)
        # the failure is at branch vertex 1: its only unique neighbor color
        # equals the anchor's color
        banned = set(blk.graph.adj[ANCHOR_VERTEX]) | {ANCHOR_VERTEX}
        y = 1
        counts = Counter(coloring.color(w) for w in blk.graph.adj[y])
        uniques = [
            coloring.color(w)
            for w in blk.graph.adj[y]
            if counts[coloring.color(w)] == 1 and w not in banned
        ]
        assert uniques == [coloring.color(ANCHOR_VERTEX)]

    def test_brute_force_confirms_a_compliant_coloring_exists(self):
        blk = anchor_block()
        start = time.perf_counter()
        assert compliant_coloring_exists(blk.graph, ANCHOR_VERTEX)
        assert time.perf_counter() - start < 1.0

    def test_anchor_sees_three_distinct_colors(self):
        blk = anchor_block()
        seen = sorted(blk.coloring.color(w) for w in blk.graph.adj[ANCHOR_VERTEX])
        assert seen == [1, 2, 3]

    def test_builder_refuses_a_broken_table(self, monkeypatch):
        import pcfodd.reductions as reductions

        broken = dict(ANCHOR_BLOCK_TABLE, **{"sub:1-2": 4})
        monkeypatch.setattr(reductions, "ANCHOR_BLOCK_TABLE", broken)
        with pytest.raises(RuntimeError, match="private witness"):
            anchor_block()


class TestLiftBipartite:
    @pytest.mark.parametrize(
        "g,colors,variant",
        [
            (path(4), [1, 2, 3, 1], "pcf"),
            (cycle(6), [1, 2, 3, 1, 2, 3], "pcf"),
            (star(3), [1, 2, 3, 2], "odd"),
        ],
        ids=["P4-pcf", "C6-pcf", "K13-odd"],
    )
    def test_lift_produces_valid_four_coloring(self, g, colors, variant):
        out = lift_bipartite(g, make_coloring(colors, k=3), variant)
        checker = check_pcf if variant == "pcf" else check_odd
        assert checker(out.graph, out.coloring).verdict
        assert out.coloring.k == 4

    def test_restriction_recovers_input(self):
        g = path(4)
        c = make_coloring([1, 2, 3, 1], k=3)
        out = lift_bipartite(g, c, "pcf")
        assert restrict_coloring(out.coloring, range(4)).assignment == c.assignment

    def test_satellites_all_take_color_four(self):
        out = lift_bipartite(path(4), make_coloring([1, 2, 3, 1], k=3), "pcf")
        satellite_colors = {
            out.coloring.color(v)
            for v, r in out.roles.items()
            if r.split(":")[0] in ("a", "b")
        }
        assert satellite_colors == {4}

    def test_solver_found_extension_colorings_pin_satellites(self):
        # any 4-coloring of the extension forces one shared satellite color
        from pcfodd.solver import Budget

        ext = build_bipartite_extension(path(4))
        result = decide_coloring(
            ext.graph, 4, "pcf",
            budget=Budget(max_nodes=3_000_000, max_seconds=None), eager=True,
        )
        assert result.status == "SAT"
        satellite_colors = {
            result.witness.color(v)
            for v, r in ext.roles.items()
            if r.split(":")[0] in ("a", "b")
        }
        assert len(satellite_colors) == 1

    def test_vertex_order_does_not_matter(self):
        # same graph under a scrambled labeling still lifts cleanly
        perm = [3, 5, 0, 2, 4, 1]
        edges = [(perm[i], perm[(i + 1) % 6]) for i in range(6)]
        g = build_graph(6, edges)
        coloring = decide_coloring(g, 3, "pcf").witness
        out = lift_bipartite(g, coloring, "pcf")
        assert check_pcf(out.graph, out.coloring).verdict

    def test_rejects_four_color_input(self):
        with pytest.raises(GraphError, match="colors"):
            lift_bipartite(cycle(4), make_coloring([1, 2, 3, 4], k=4), "pcf")

    def test_rejects_failing_certificate(self):
        with pytest.raises(GraphError, match="fails"):
            lift_bipartite(cycle(4), make_coloring([1, 2, 1, 2], k=3), "pcf")

    def test_rejects_isolated_vertices(self):
        g = build_graph(5, [(0, 1), (1, 2), (2, 3)])
        with pytest.raises(GraphError, match="isolated"):
            lift_bipartite(g, make_coloring([1, 2, 3, 1, 1], k=3), "pcf")

    def test_rejects_tiny_inputs(self):
        with pytest.raises(GraphError, match="more than 3"):
            lift_bipartite(path(3), make_coloring([1, 2, 1], k=3), "pcf")


class TestAttachTents:
    def test_square_counts(self):
        pg = build_plane_graph(cycle(4), natural_cycle_rotation(4))
        out = attach_tents(pg)
        assert out.graph.n == 80 and out.graph.m == 134

    def test_hexagon_counts(self):
        pg = build_plane_graph(cycle(6), natural_cycle_rotation(6))
        out = attach_tents(pg)
        assert out.graph.n == 114 and out.graph.m == 192

    def test_triangle_tent_cycle_has_length_fourteen(self):
        pg = build_plane_graph(complete(3), [(2, 1), (0, 2), (1, 0)])
        out = attach_tents(pg)
        for f in ("0", "1"):
            indices = [
                int(r.split(":")[3])
                for r in out.roles.values()
                if r.startswith(f"tent:{f}:v:")
            ]
            assert max(indices) == 14

    def test_per_face_counts_on_cycles(self):
        for n in range(3, 9):
            pg = build_plane_graph(cycle(n), natural_cycle_rotation(n))
            out = attach_tents(pg)
            assert out.graph.n == n + 2 * (8 * n + 6)
            assert out.graph.m == n + 2 * (14 * n + 9)

    def test_pendants_have_degree_one(self):
        pg = build_plane_graph(cycle(4), natural_cycle_rotation(4))
        out = attach_tents(pg)
        for v, r in out.roles.items():
            if ":l:" in r:
                assert out.graph.degree(v) == 1

    def test_original_vertices_meet_two_even_cycle_vertices_per_face(self):
        pg = build_plane_graph(cycle(5), natural_cycle_rotation(5))
        out = attach_tents(pg)
        for v in range(5):
            tent_indices = [
                int(out.roles[w].split(":")[3])
                for w in out.graph.adj[v]
                if out.roles[w].split(":")[0] == "tent"
            ]
            assert len(tent_indices) == 4
            assert all(i % 2 == 0 for i in tent_indices)

    def test_requires_two_connected(self):
        g = path(3)
        with pytest.raises(GraphError, match="2-connected"):
            attach_tents(build_plane_graph(g, [(1,), (0, 2), (1,)]))


class TestLiftPlanar:
    def test_hexagon_lift_is_conflict_free(self):
        pg = build_plane_graph(cycle(6), natural_cycle_rotation(6))
        out = lift_planar(pg, make_coloring([1, 2, 3, 1, 2, 3], k=3))
        assert check_pcf(out.graph, out.coloring).verdict
        assert out.graph.n == 114

    def test_originals_keep_their_colors(self):
        pg = build_plane_graph(cycle(6), natural_cycle_rotation(6))
        c = make_coloring([1, 2, 3, 1, 2, 3], k=3)
        out = lift_planar(pg, c)
        assert restrict_coloring(out.coloring, range(6)).assignment == c.assignment

    def test_tent_neighbors_of_originals_take_color_four(self):
        pg = build_plane_graph(cycle(6), natural_cycle_rotation(6))
        out = lift_planar(pg, make_coloring([1, 2, 3, 1, 2, 3], k=3))
        for v in range(6):
            for w in out.graph.adj[v]:
                if out.roles[w].split(":")[0] == "tent":
                    assert out.coloring.color(w) == 4

    def test_rejects_non_conflict_free_input(self):
        pg = build_plane_graph(cycle(4), natural_cycle_rotation(4))
        with pytest.raises(GraphError, match="conflict-free"):
            lift_planar(pg, make_coloring([1, 2, 1, 2], k=3))


class TestSubdivisionChain:
    # chi(g) <= chi_odd(sub1 g) <= chi_pcf(sub1 g) <= max(chi(g), 5),
    # discharged exhaustively over every labeled graph up to six vertices

    def test_exhaustive_to_five_vertices(self):
        for n in range(1, 6):
            for mask in range(1 << (n * (n - 1) // 2)):
                self._check(graph_from_mask(n, mask))

    def test_exhaustive_six_vertices(self):
        for mask in range(1 << 15):
            self._check(graph_from_mask(6, mask))

    @staticmethod
    def _check(g):
        sub = subdivide(g, 1).graph
        chi = chromatic_number(g, "proper", eager=True)
        odd = chromatic_number(sub, "odd", eager=True)
        pcf = chromatic_number(sub, "pcf", eager=True)
        assert chi <= odd <= pcf <= max(chi, 5), (sorted(g.edges), chi, odd, pcf)


class TestRoleMaps:
    def test_every_constructor_labels_each_vertex_once(self):
        pg = build_plane_graph(cycle(4), natural_cycle_rotation(4))
        outputs = [
            subdivide(cycle(4), 1),
            subdivide(cycle(4), 2),
            add_pendants_all(path(3)),
            add_universal_vertex(path(3)),
            add_pendants_even_degree(cycle(4)),
            add_two_universal(path(3)),
            build_anchor_gadget(2, 2),
            build_bipartite_extension(path(4)),
            attach_tents(pg),
            anchor_block(),
        ]
        for out in outputs:
            assert set(out.roles) == set(range(out.graph.n))
            assert len(set(out.roles.values())) == out.graph.n

    def test_lift_on_disconnected_bipartite_input(self):
        g = build_graph(4, [(0, 1), (2, 3)])
        out = lift_bipartite(g, make_coloring([1, 2, 1, 2], k=2), "pcf")
        assert check_pcf(out.graph, out.coloring).verdict


class TestGreedyExtension:
    def test_single_edge_takes_smallest_free_color(self):
        out = greedy_extend_subdivision(complete(2), make_coloring([1, 2], k=2), 5)
        assert out.coloring.color(2) == 3

    def test_pentagon(self):
        out = greedy_extend_subdivision(
            cycle(5), make_coloring([1, 2, 1, 2, 3], k=3), 5
        )
        assert check_pcf(out.graph, out.coloring).verdict

    def test_complete_graph_five(self):
        out = greedy_extend_subdivision(
            complete(5), make_coloring([1, 2, 3, 4, 5], k=5), 5
        )
        assert check_pcf(out.graph, out.coloring).verdict

    def test_random_inputs_always_extend_at_the_bound(self):
        for g in seeded_graphs(30, 7, seed=13):
            chi = chromatic_number(g, "proper")
            base = decide_coloring(g, chi, "proper").witness
            out = greedy_extend_subdivision(g, base, max(chi, 5))
            assert check_pcf(out.graph, out.coloring).verdict

    def test_rejects_small_palette(self):
        with pytest.raises(GraphError, match="below"):
            greedy_extend_subdivision(complete(2), make_coloring([1, 2], k=2), 4)

    def test_rejects_improper_input(self):
        with pytest.raises(GraphError, match="proper"):
            greedy_extend_subdivision(complete(2), make_coloring([1, 1], k=2), 5)
