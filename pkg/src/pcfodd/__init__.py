"""Exact solving, certificate checking, and gadget constructions for proper
conflict-free and odd graph colorings."""

from .coloring import (
    CertificateReport,
    Coloring,
    ColoringError,
    check,
    check_odd,
    check_pcf,
    check_proper,
    make_coloring,
    restrict_coloring,
)
from .cnf import CnfFormula, encode_cnf, parse_dimacs, solve_cnf
from .graph import (
    Bipartition,
    Face,
    Graph,
    GraphError,
    PlaneGraph,
    bipartition,
    build_graph,
    build_plane_graph,
    degree_profile,
    is_two_connected,
    trace_faces,
)
from .harness import (
    SuiteReport,
    run_characterization_suite,
    run_cnf_crosscheck,
    run_lemma_suite,
    run_reduction_suite,
)
from .reductions import (
    GadgetOutput,
    add_pendants_all,
    add_pendants_even_degree,
    add_two_universal,
    add_universal_vertex,
    anchor_block,
    attach_tents,
    build_anchor_gadget,
    build_bipartite_extension,
    greedy_extend_subdivision,
    lift_bipartite,
    lift_planar,
    subdivide,
)
from .solver import (
    Budget,
    SolveResult,
    SolveTimeout,
    brute_force_oracle,
    chromatic_number,
    decide_coloring,
)

__version__ = "0.1.0"
