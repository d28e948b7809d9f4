"""Command-line entry point.

Exit codes: 0 verified/SAT, 1 refuted/UNSAT, 2 timeout, 64 usage error,
65 malformed data or violated precondition, 66 missing input file.
PCFODD_MAX_NODES / PCFODD_MAX_SECONDS set the default solve budget.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .cnf import encode_cnf
from .coloring import ColoringError, check
from .graph import GraphError
from .harness import (
    SUITE_BUDGET,
    run_characterization_suite,
    run_lemma_suite,
    run_reduction_suite,
)
from .io import (
    parse_coloring,
    parse_edge_list,
    parse_rotation,
    to_dot,
    write_coloring,
    write_edge_list,
    write_roles,
)
from .reductions import (
    add_pendants_all,
    add_pendants_even_degree,
    add_two_universal,
    add_universal_vertex,
    attach_tents,
    build_anchor_gadget,
    build_bipartite_extension,
    greedy_extend_subdivision,
    lift_bipartite,
    lift_planar,
    subdivide,
)
from .solver import Budget, SolveTimeout, chromatic_number, decide_coloring

EX_OK, EX_REFUTED, EX_TIMEOUT = 0, 1, 2
EX_USAGE, EX_DATA, EX_NOINPUT = 64, 65, 66


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        sys.exit(EX_USAGE)


def _read(path: str) -> str:
    return Path(path).read_text()


def _load_graph(args):
    return parse_edge_list(_read(args.graph))


def _load_plane(args):
    g = _load_graph(args)
    return parse_rotation(_read(args.rotation), g)


def _budget_from(args) -> Budget:
    nodes = args.max_nodes
    seconds = args.max_seconds
    if nodes is None:
        env = os.environ.get("PCFODD_MAX_NODES")
        nodes = int(env) if env else Budget().max_nodes
    if seconds is None:
        env = os.environ.get("PCFODD_MAX_SECONDS")
        seconds = float(env) if env else Budget().max_seconds
    return Budget(max_nodes=nodes, max_seconds=seconds)


def _add_budget_flags(p) -> None:
    p.add_argument("--max-nodes", type=int, default=None)
    p.add_argument("--max-seconds", type=float, default=None)


def _write_outputs(prefix: str, gadget, quiet: bool = False) -> None:
    graph_path = Path(f"{prefix}.txt")
    graph_path.write_text(write_edge_list(gadget.graph))
    roles_path = Path(f"{prefix}.roles.json")
    roles_path.write_text(write_roles(gadget.roles))
    written = [str(graph_path), str(roles_path)]
    if gadget.coloring is not None:
        coloring_path = Path(f"{prefix}.coloring.txt")
        coloring_path.write_text(write_coloring(gadget.coloring))
        written.append(str(coloring_path))
    if not quiet:
        for w in written:
            print(w)


def cmd_check(args) -> int:
    g = _load_graph(args)
    c = parse_coloring(_read(args.coloring))
    report = check(args.variant, g, c)
    print(report.to_json())
    return EX_OK if report.verdict else EX_REFUTED


def cmd_solve(args) -> int:
    g = _load_graph(args)
    result = decide_coloring(
        g, args.k, args.variant, budget=_budget_from(args), eager=args.eager
    )
    print(result.to_json())
    return {"SAT": EX_OK, "UNSAT": EX_REFUTED, "TIMEOUT": EX_TIMEOUT}[result.status]


def cmd_chromatic(args) -> int:
    g = _load_graph(args)
    try:
        value = chromatic_number(
            g, args.variant, budget=_budget_from(args), eager=args.eager
        )
    except SolveTimeout as exc:
        print(f"TIMEOUT: value >= {exc.lower}", file=sys.stderr)
        return EX_TIMEOUT
    print(value)
    return EX_OK


def cmd_build(args) -> int:
    if args.what == "gnm":
        gadget = build_anchor_gadget(args.n, args.m)
        prefix = args.out or f"gnm-{args.n}-{args.m}"
        _write_outputs(prefix, gadget)
        return EX_OK
    if args.what == "tents":
        gadget = attach_tents(_load_plane(args))
    else:
        g = _load_graph(args)
        builder = {
            "sub1": lambda h: subdivide(h, 1),
            "pendants": add_pendants_all,
            "apex": add_universal_vertex,
            "pendants-even": add_pendants_even_degree,
            "two-apex": add_two_universal,
            "bip-tilde": build_bipartite_extension,
        }[args.what]
        gadget = builder(g)
    prefix = args.out or f"{Path(args.graph).stem}-{args.what}"
    _write_outputs(prefix, gadget)
    return EX_OK


def cmd_lift(args) -> int:
    c = parse_coloring(_read(args.coloring))
    if args.what == "bip":
        gadget = lift_bipartite(_load_graph(args), c, args.variant)
    elif args.what == "planar":
        gadget = lift_planar(_load_plane(args), c)
    else:
        gadget = greedy_extend_subdivision(_load_graph(args), c, args.k)
    prefix = args.out or f"{Path(args.graph).stem}-lift-{args.what}"
    _write_outputs(prefix, gadget)
    return EX_OK


def cmd_suite(args) -> int:
    # suites default to node-only budgets so reports replay byte-identically
    budget = Budget(max_nodes=args.max_nodes, max_seconds=args.max_seconds)
    if args.which == "characterization":
        report = run_characterization_suite(args.max_n, budget=budget, jobs=args.jobs)
    elif args.which == "lemmas":
        report = run_lemma_suite(
            max_n=args.max_n,
            samples=args.samples,
            sample_max_n=args.sample_max_n,
            seed=args.seed,
            budget=budget,
            jobs=args.jobs,
            eager=args.eager,
        )
    else:
        report = run_reduction_suite(
            budget=budget, eager=args.eager, out_dir=args.out_dir
        )
    text = report.to_json()
    if args.out:
        Path(args.out).write_text(text)
        print(args.out)
    else:
        print(text, end="")
    if report.summary["refuted"]:
        return EX_REFUTED
    if report.summary["timeout"]:
        return EX_TIMEOUT
    return EX_OK


def cmd_encode_cnf(args) -> int:
    g = _load_graph(args)
    formula = encode_cnf(g, args.k, args.variant)
    text = formula.to_dimacs()
    if args.out:
        Path(args.out).write_text(text)
        print(args.out)
    else:
        print(text, end="")
    return EX_OK


def cmd_export_dot(args) -> int:
    g = _load_graph(args)
    coloring = parse_coloring(_read(args.coloring)) if args.coloring else None
    text = to_dot(g, coloring)
    if args.out:
        Path(args.out).write_text(text)
        print(args.out)
    else:
        print(text, end="")
    return EX_OK


def make_parser() -> _Parser:
    parser = _Parser(prog="pcfodd", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="check a coloring file against a predicate")
    p.add_argument("--variant", choices=("proper", "pcf", "odd"), required=True)
    p.add_argument("-g", "--graph", required=True)
    p.add_argument("-c", "--coloring", required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="decide k-colorability")
    p.add_argument("--variant", choices=("proper", "pcf", "odd"), required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-g", "--graph", required=True)
    p.add_argument("--eager", action="store_true")
    _add_budget_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("chromatic", help="smallest admissible palette size")
    p.add_argument("--variant", choices=("proper", "pcf", "odd"), required=True)
    p.add_argument("-g", "--graph", required=True)
    p.add_argument("--eager", action="store_true")
    _add_budget_flags(p)
    p.set_defaults(func=cmd_chromatic)

    p = sub.add_parser("build", help="run a gadget constructor")
    p.add_argument(
        "what",
        choices=(
            "sub1", "pendants", "apex", "pendants-even", "two-apex",
            "gnm", "bip-tilde", "tents",
        ),
    )
    p.add_argument("-g", "--graph")
    p.add_argument("-r", "--rotation")
    p.add_argument("-n", type=int, default=1)
    p.add_argument("-m", type=int, default=1)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("lift", help="construct a certified gadget coloring")
    p.add_argument("what", choices=("bip", "planar", "greedy"))
    p.add_argument("-g", "--graph", required=True)
    p.add_argument("-r", "--rotation")
    p.add_argument("-c", "--coloring", required=True)
    p.add_argument("-k", type=int, default=5)
    p.add_argument("--variant", choices=("pcf", "odd"), default="pcf")
    p.set_defaults(func=cmd_lift)
    p.add_argument("-o", "--out")

    p = sub.add_parser("suite", help="run a verification suite")
    p.add_argument("which", choices=("characterization", "lemmas", "reductions"))
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--sample-max-n", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--eager", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--out")
    p.add_argument("--out-dir")
    p.add_argument("--max-nodes", type=int, default=SUITE_BUDGET.max_nodes)
    p.add_argument("--max-seconds", type=float, default=SUITE_BUDGET.max_seconds)
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("encode-cnf", help="export a DIMACS CNF encoding")
    p.add_argument("--variant", choices=("proper", "pcf", "odd"), required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-g", "--graph", required=True)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_encode_cnf)

    p = sub.add_parser("export-dot", help="export DOT, optionally colored")
    p.add_argument("-g", "--graph", required=True)
    p.add_argument("-c", "--coloring")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_export_dot)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_NOINPUT
    except (GraphError, ColoringError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_DATA


if __name__ == "__main__":
    sys.exit(main())
