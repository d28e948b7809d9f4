"""CNF encodings: shapes, DIMACS round trips, and equisatisfiability."""

from __future__ import annotations

from itertools import combinations

import pytest

from pcfodd.cnf import cnf_status, encode_cnf, parse_dimacs, solve_cnf
from pcfodd.coloring import check_proper
from pcfodd.solver import SAT, UNSAT, brute_force_oracle

from conftest import all_labeled_graphs, complete, cycle, star


class TestEncodeShapes:
    def test_single_edge_proper_two_colors(self):
        formula = encode_cnf(complete(2), 2, "proper")
        assert formula.num_vars == 4  # primary variables only
        status, _ = solve_cnf(formula.num_vars, formula.clauses)
        assert status == SAT

    def test_variable_map_comment_format(self):
        formula = encode_cnf(complete(2), 2, "pcf")
        assert "c var 1 = x 0 1" in formula.comments
        assert any(line.startswith("c aux") for line in formula.comments)

    def test_square_conflict_free_three_is_unsat(self):
        assert cnf_status(cycle(4), 3, "pcf") == UNSAT
        assert brute_force_oracle(cycle(4), 3, "pcf").status == UNSAT

    def test_isolated_vertices_impose_nothing(self):
        from pcfodd.graph import build_graph

        g = build_graph(3, [(0, 1)])
        for variant in ("pcf", "odd"):
            assert cnf_status(g, 2, variant) == SAT


class TestParityChain:
    @pytest.mark.parametrize("leaves", range(1, 6))
    @pytest.mark.parametrize("k", [2, 3])
    def test_star_odd_encoding_matches_oracle(self, leaves, k):
        g = star(leaves)
        assert cnf_status(g, k, "odd") == brute_force_oracle(g, k, "odd").status


class TestDimacs:
    def test_round_trip(self):
        formula = encode_cnf(cycle(4), 3, "odd")
        parsed = parse_dimacs(formula.to_dimacs())
        assert parsed.num_vars == formula.num_vars
        assert parsed.clauses == formula.clauses
        assert parsed.var_map == formula.var_map

    def test_header_clause_count_checked(self):
        from pcfodd.graph import GraphError

        with pytest.raises(GraphError, match="promises"):
            parse_dimacs("p cnf 2 3\n1 2 0\n")

    def test_decode_model_gives_checked_coloring(self):
        g = complete(3)
        formula = encode_cnf(g, 3, "proper")
        status, model = solve_cnf(formula.num_vars, formula.clauses)
        assert status == SAT
        coloring = formula.decode(model)
        assert check_proper(g, coloring).verdict


class TestSolveCnf:
    def test_empty_clause_unsat(self):
        assert solve_cnf(1, [()])[0] == UNSAT

    def test_unit_conflict_unsat(self):
        assert solve_cnf(1, [(1,), (-1,)])[0] == UNSAT

    def test_step_budget_raises_instead_of_guessing(self):
        formula = encode_cnf(complete(4), 3, "proper")
        with pytest.raises(RuntimeError, match="budget"):
            solve_cnf(formula.num_vars, formula.clauses, max_steps=2)


class TestEquisatisfiability:
    @pytest.mark.parametrize("n", range(1, 5))
    def test_all_graphs_small(self, n):
        for g in all_labeled_graphs(n):
            for k in (1, 2, 3):
                for variant in ("proper", "pcf", "odd"):
                    assert (
                        cnf_status(g, k, variant)
                        == brute_force_oracle(g, k, variant).status
                    ), (sorted(g.edges), k, variant)
