"""Batch verification suites: every structural claim the toolkit encodes is
confronted with solver, oracle, and lift evidence, and the outcome lands in
a machine-readable report.

Reports are deterministic: suites default to node-only budgets, random
instances come from a seeded generator recorded in the report, and the JSON
serialization is canonical, so a rerun with the same seed and budgets is
byte-identical.  A refuted case always carries a concrete counterexample; a
timeout names the exhausted budget and is never converted into a verdict.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path

from .cnf import encode_cnf, solve_cnf
from .coloring import CHECKERS, Coloring, restrict_coloring
from .graph import Graph, bipartition, build_graph, build_plane_graph, degree_profile
from .io import write_coloring
from .reductions import (
    add_pendants_all,
    add_pendants_even_degree,
    add_two_universal,
    add_universal_vertex,
    attach_tents,
    build_bipartite_extension,
    greedy_extend_subdivision,
    lift_bipartite,
    lift_planar,
    subdivide,
)
from .solver import (
    SAT,
    TIMEOUT,
    UNSAT,
    Budget,
    SolveTimeout,
    brute_force_oracle,
    chromatic_number,
    decide_coloring,
)

VERIFIED = "verified"
REFUTED = "refuted"
TIMED_OUT = "timeout"

SUITE_BUDGET = Budget(max_nodes=3_000_000, max_seconds=None)


@dataclass
class CaseRecord:
    id: str
    claim: str
    ref: str
    verdict: str
    artifact_paths: list[str] = field(default_factory=list)
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "claim": self.claim,
            "ref": self.ref,
            "verdict": self.verdict,
            "artifact_paths": self.artifact_paths,
            "detail": self.detail,
        }


@dataclass
class SuiteReport:
    suite: str
    seed: int | None
    budgets: dict
    cases: list[CaseRecord]
    summary: dict

    def to_json(self) -> str:
        return json.dumps(
            {
                "suite": self.suite,
                "seed": self.seed,
                "budgets": self.budgets,
                "cases": [c.to_dict() for c in self.cases],
                "summary": self.summary,
            },
            sort_keys=True,
            indent=2,
        ) + "\n"


def _summarize(cases: list[CaseRecord], extra: dict | None = None) -> dict:
    summary = {
        "cases": len(cases),
        "verified": sum(1 for c in cases if c.verdict == VERIFIED),
        "refuted": sum(1 for c in cases if c.verdict == REFUTED),
        "timeout": sum(1 for c in cases if c.verdict == TIMED_OUT),
    }
    if extra:
        summary.update(extra)
    return summary


def all_pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


def graph_from_mask(n: int, mask: int) -> Graph:
    pairs = all_pairs(n)
    return build_graph(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])


def labeled_graph_count(n: int) -> int:
    return 1 << (n * (n - 1) // 2)


def random_graph(rng: random.Random, max_n: int) -> Graph:
    n = rng.randint(1, max_n)
    edges = [p for p in all_pairs(n) if rng.random() < 0.5]
    return build_graph(n, edges)


def degree2_violations(g: Graph, c: Coloring) -> list[int]:
    """Degree-2 vertices whose two neighbors share a color (must be empty
    for every odd or conflict-free coloring)."""
    bad = []
    for v in range(g.n):
        if g.degree(v) == 2:
            w1, w2 = sorted(g.adj[v])
            if c.color(w1) == c.color(w2):
                bad.append(v)
    return bad


class _Degree2Tally:
    def __init__(self) -> None:
        self.checked = 0
        self.violations: list[tuple[str, int]] = []

    def check(self, label: str, g: Graph, c: Coloring | None) -> None:
        if c is None:
            return
        self.checked += 1
        for v in degree2_violations(g, c):
            self.violations.append((label, v))

    def summary(self) -> dict:
        return {
            "degree2_witnesses_checked": self.checked,
            "degree2_violations": [list(t) for t in self.violations],
        }


# ---------------------------------------------------------------------------
# characterization suite: solver verdicts at k = 2 against the two closed
# characterizations of 2-colorability
# ---------------------------------------------------------------------------


def _char_worker(task: tuple[int, int, dict]) -> tuple[int, str, str, int, int]:
    n, mask, budget_kw = task
    g = graph_from_mask(n, mask)
    budget = Budget(**budget_kw)
    profile = degree_profile(g)

    def outcome(variant: str, expected: bool) -> str:
        result = decide_coloring(g, 2, variant, budget=budget)
        if result.witness is not None:
            tallies.append(result.witness)
        if result.status == TIMEOUT:
            return TIMED_OUT
        return VERIFIED if (result.status == SAT) == expected else REFUTED

    tallies: list[Coloring] = []
    pcf_out = outcome("pcf", profile.max_degree <= 1)
    odd_out = outcome(
        "odd",
        bipartition(g) is not None
        and all(d % 2 == 1 or d == 0 for d in profile.degrees),
    )
    checked = len(tallies)
    bad_deg2 = sum(len(degree2_violations(g, w)) for w in tallies)
    return mask, pcf_out, odd_out, checked, bad_deg2


def run_characterization_suite(
    max_n: int = 5, budget: Budget | None = None, jobs: int = 1
) -> SuiteReport:
    """Exhaustively test, over all labeled graphs with n <= max_n, that
    2-colorability verdicts match the closed characterizations: a
    conflict-free 2-coloring exists iff the maximum degree is at most 1,
    and an odd 2-coloring exists iff the graph is bipartite with every
    degree odd or zero."""
    if max_n > 5:
        raise ValueError("exhaustive sweep is capped at n = 5")
    budget = budget or SUITE_BUDGET
    tally = _Degree2Tally()
    cases: list[CaseRecord] = []
    for n in range(1, max_n + 1):
        tasks = [(n, mask, budget.to_dict()) for mask in range(labeled_graph_count(n))]
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_char_worker, tasks, chunksize=64))
        else:
            results = [_char_worker(t) for t in tasks]
        tally.checked += sum(r[3] for r in results)
        for mask, _, _, _, bad in results:
            if bad:
                tally.violations.append((f"char-n{n}-mask{mask}", bad))
        for col, case_id, ref, text in (
            (1, f"pcf2-n{n}", "two-color-pcf-iff-max-degree-one",
             "conflict-free 2-colorable iff max degree <= 1"),
            (2, f"odd2-n{n}", "two-color-odd-iff-odd-or-zero-degrees",
             "odd 2-colorable iff bipartite with every degree odd or zero"),
        ):
            bad_masks = [r[0] for r in results if r[col] == REFUTED]
            timeouts = [r[0] for r in results if r[col] == TIMED_OUT]
            verdict = REFUTED if bad_masks else (TIMED_OUT if timeouts else VERIFIED)
            cases.append(
                CaseRecord(
                    id=case_id,
                    claim=f"over all {len(tasks)} labeled graphs on {n} vertices: {text}",
                    ref=ref,
                    verdict=verdict,
                    detail={
                        "graphs": len(tasks),
                        "counterexample_masks": bad_masks[:16],
                        "timeout_masks": timeouts[:16],
                    },
                )
            )
    return SuiteReport(
        suite="characterization",
        seed=None,
        budgets=budget.to_dict(),
        cases=cases,
        summary=_summarize(cases, tally.summary()),
    )


# ---------------------------------------------------------------------------
# lemma suite: the four reduction bounds, the degree-2 fact on every witness,
# and the subdivision sandwich with its greedy witness
# ---------------------------------------------------------------------------

_LEMMA_SPECS = (
    ("pendants-all", "chi(G) <= chi_pcf(H) <= chi(G)+1 for H = pendant at every vertex"),
    ("apex", "chi(G)+1 <= chi_pcf(H) <= chi(G)+2 for H = one universal vertex added"),
    ("pendants-even", "chi(G) = chi_odd(H) for H = pendant at every even-degree vertex"
     " (edgeless G: chi_odd(H) = 2)"),
    ("two-apex", "chi(G)+2 = chi_pcf(H) for H = two adjacent universal vertices added"),
)


def _lemma_worker(task: tuple[int, int, dict, bool]) -> tuple[int, dict | None, int, int]:
    n, mask, budget_kw, eager = task
    g = graph_from_mask(n, mask)
    budget = Budget(**budget_kw)
    ok: dict[str, bool] = {}
    checked = 0
    bad = 0

    def value_and_witness(h: Graph, variant: str) -> int:
        nonlocal checked, bad
        val = chromatic_number(h, variant, budget=budget, eager=eager)
        wit = decide_coloring(h, val, variant, budget=budget, eager=eager).witness
        if wit is not None:
            checked += 1
            bad += len(degree2_violations(h, wit))
        return val

    try:
        chi = chromatic_number(g, "proper", budget=budget, eager=eager)
        v = value_and_witness(add_pendants_all(g).graph, "pcf")
        ok["pendants-all"] = chi <= v <= chi + 1
        v = value_and_witness(add_universal_vertex(g).graph, "pcf")
        ok["apex"] = chi + 1 <= v <= chi + 2
        v = value_and_witness(add_pendants_even_degree(g).graph, "odd")
        # the equality presumes an edge; an edgeless G turns into a perfect
        # matching, whose odd chromatic number is 2 regardless of chi = 1
        ok["pendants-even"] = v == chi if g.m > 0 else v == 2
        v = value_and_witness(add_two_universal(g).graph, "pcf")
        ok["two-apex"] = v == chi + 2
    except SolveTimeout:
        return mask, None, checked, bad
    return mask, ok, checked, bad


def _sandwich_worker(task: tuple[int, tuple, dict, bool]) -> tuple[str, dict, int, int]:
    n, edges, budget_kw, eager = task
    g = build_graph(n, list(edges))
    budget = Budget(**budget_kw)
    checked = 0
    bad = 0
    try:
        chi = chromatic_number(g, "proper", budget=budget, eager=eager)
        sub = subdivide(g, 1).graph
        odd_chi = chromatic_number(sub, "odd", budget=budget, eager=eager)
        pcf_chi = chromatic_number(sub, "pcf", budget=budget, eager=eager)
    except SolveTimeout as exc:
        return TIMED_OUT, {"reason": str(exc)}, 0, 0
    bound = max(chi, 5)
    chain_ok = chi <= odd_chi <= pcf_chi <= bound
    for variant, val in (("odd", odd_chi), ("pcf", pcf_chi)):
        wit = decide_coloring(sub, val, variant, budget=budget, eager=eager).witness
        if wit is not None:
            checked += 1
            bad += len(degree2_violations(sub, wit))
    greedy_ok = True
    if g.m > 0:
        base = decide_coloring(g, chi, "proper", budget=budget).witness
        try:
            greedy_extend_subdivision(g, base, bound)
        except Exception:
            greedy_ok = False
    detail = {
        "chi": chi,
        "odd_of_subdivision": odd_chi,
        "pcf_of_subdivision": pcf_chi,
        "bound": bound,
        "chain_ok": chain_ok,
        "greedy_ok": greedy_ok,
    }
    verdict = VERIFIED if chain_ok and greedy_ok else REFUTED
    return verdict, detail, checked, bad


def run_lemma_suite(
    max_n: int = 5,
    samples: int = 200,
    sample_max_n: int = 6,
    seed: int = 0,
    budget: Budget | None = None,
    jobs: int = 1,
    eager: bool = True,
) -> SuiteReport:
    """Exhaustive check of the four reduction bounds up to max_n, plus the
    subdivision sandwich chain on seeded random samples, with the degree-2
    fact asserted on every witness encountered."""
    budget = budget or SUITE_BUDGET
    tally = _Degree2Tally()
    cases: list[CaseRecord] = []

    for n in range(1, max_n + 1):
        tasks = [(n, mask, budget.to_dict(), eager) for mask in range(labeled_graph_count(n))]
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_lemma_worker, tasks, chunksize=16))
        else:
            results = [_lemma_worker(t) for t in tasks]
        tally.checked += sum(r[2] for r in results)
        for mask, _, _, bad in results:
            if bad:
                tally.violations.append((f"lemma-n{n}-mask{mask}", bad))
        timeouts = [mask for mask, ok, _, _ in results if ok is None]
        for key, claim in _LEMMA_SPECS:
            bad_masks = [mask for mask, ok, _, _ in results if ok is not None and not ok[key]]
            verdict = REFUTED if bad_masks else (TIMED_OUT if timeouts else VERIFIED)
            cases.append(
                CaseRecord(
                    id=f"{key}-n{n}",
                    claim=f"over all {len(tasks)} labeled graphs on {n} vertices: {claim}",
                    ref=f"reduction-bound-{key}",
                    verdict=verdict,
                    detail={
                        "graphs": len(tasks),
                        "counterexample_masks": bad_masks[:16],
                        "timeout_masks": timeouts[:16],
                    },
                )
            )

    rng = random.Random(seed)
    tasks = []
    for i in range(samples):
        g = random_graph(rng, sample_max_n)
        tasks.append((g.n, tuple(g.sorted_edges()), budget.to_dict(), eager))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sandwich_worker, tasks, chunksize=8))
    else:
        results = [_sandwich_worker(t) for t in tasks]
    for i, (verdict, detail, checked, bad) in enumerate(results):
        tally.checked += checked
        if bad:
            tally.violations.append((f"sandwich-{i}", bad))
        n, edges = tasks[i][0], tasks[i][1]
        cases.append(
            CaseRecord(
                id=f"sandwich-{i}",
                claim=f"n={n} m={len(edges)}: chi <= chi_odd(sub1) <= chi_pcf(sub1)"
                " <= max(chi, 5), with a valid greedy witness at the bound",
                ref="subdivision-sandwich",
                verdict=verdict,
                detail=dict(detail, edges=[list(e) for e in edges]),
            )
        )

    return SuiteReport(
        suite="lemmas",
        seed=seed,
        budgets=dict(budget.to_dict(), eager=eager),
        cases=cases,
        summary=_summarize(cases, tally.summary()),
    )


# ---------------------------------------------------------------------------
# encoder cross-validation: CNF satisfiability vs the enumeration oracle
# ---------------------------------------------------------------------------


def _equisat_worker(task: tuple[int, int, tuple[int, ...]]) -> list[list]:
    n, mask, ks = task
    g = graph_from_mask(n, mask)
    mismatches: list[list] = []
    for k in ks:
        for variant in ("proper", "pcf", "odd"):
            want = brute_force_oracle(g, k, variant).status
            formula = encode_cnf(g, k, variant)
            got, model = solve_cnf(formula.num_vars, formula.clauses)
            if got != want:
                mismatches.append([n, mask, k, variant, want, got])
            elif got == SAT:
                coloring = formula.decode(model)
                if not CHECKERS[variant](g, coloring).verdict:
                    mismatches.append([n, mask, k, variant, "model-invalid", got])
    return mismatches


def run_cnf_crosscheck(
    max_n: int, kmax: int = 4, jobs: int = 1
) -> tuple[int, list[list]]:
    """Compare CNF satisfiability (internal search) with the enumeration
    oracle over every labeled graph with 1 <= n <= max_n, every palette size
    up to kmax, and all three predicates.  SAT models are additionally
    decoded and re-checked.  Returns (instances checked, mismatches)."""
    ks = tuple(range(1, kmax + 1))
    tasks = [
        (n, mask, ks)
        for n in range(1, max_n + 1)
        for mask in range(labeled_graph_count(n))
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            per_task = list(pool.map(_equisat_worker, tasks, chunksize=256))
    else:
        per_task = [_equisat_worker(t) for t in tasks]
    mismatches = [m for chunk in per_task for m in chunk]
    return len(tasks) * len(ks) * 3, mismatches


# ---------------------------------------------------------------------------
# reduction suite: both directions of the two gadget equivalences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReductionInstance:
    name: str
    kind: str  # "bipartite" | "planar"
    n: int
    edges: tuple[tuple[int, int], ...]
    variant: str = "pcf"
    rotation: tuple[tuple[int, ...], ...] | None = None

    def graph(self) -> Graph:
        return build_graph(self.n, list(self.edges))


def _cycle_edges(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, (i + 1) % n) for i in range(n))


def _cycle_rotation(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(((i - 1) % n, (i + 1) % n) for i in range(n))


def default_reduction_instances() -> list[ReductionInstance]:
    p4 = ((0, 1), (1, 2), (2, 3))
    star = ((0, 1), (0, 2), (0, 3))
    out = []
    for variant in ("pcf", "odd"):
        out.append(ReductionInstance("P4", "bipartite", 4, p4, variant))
        out.append(ReductionInstance("C6", "bipartite", 6, _cycle_edges(6), variant))
        out.append(ReductionInstance("K13", "bipartite", 4, star, variant))
        out.append(ReductionInstance("C4", "bipartite", 4, _cycle_edges(4), variant))
    out.append(
        ReductionInstance("C6", "planar", 6, _cycle_edges(6), "pcf", _cycle_rotation(6))
    )
    out.append(
        ReductionInstance("C4", "planar", 4, _cycle_edges(4), "pcf", _cycle_rotation(4))
    )
    return out


def _write_artifact(out_dir: Path | None, name: str, content: str) -> list[str]:
    if out_dir is None:
        return []
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / name
    path.write_text(content)
    return [name]


def run_reduction_suite(
    instances: list[ReductionInstance] | None = None,
    budget: Budget | None = None,
    eager: bool = True,
    out_dir: str | Path | None = None,
) -> SuiteReport:
    """For each instance, check the gadget equivalence in whichever
    direction applies: when the base graph is 3-colorable, the lift must
    produce a valid 4-coloring of the extension, and any solver-found
    4-coloring of the extension must restrict to a valid 3-coloring; when
    it is not, the extension must have no 4-coloring, attempted internally
    within budget and exported as CNF for external confirmation."""
    budget = budget or SUITE_BUDGET
    out_path = Path(out_dir) if out_dir is not None else None
    instances = default_reduction_instances() if instances is None else instances
    tally = _Degree2Tally()
    cases: list[CaseRecord] = []

    for inst in instances:
        g = inst.graph()
        base_id = f"{inst.name}-{inst.kind}-{inst.variant}"
        ref = "bipartite-3-vs-4" if inst.kind == "bipartite" else "planar-3-vs-4"
        oracle3 = brute_force_oracle(g, 3, inst.variant)
        if inst.kind == "bipartite":
            ext = build_bipartite_extension(g)
        else:
            ext = attach_tents(build_plane_graph(g, inst.rotation))

        if oracle3.status == SAT:
            artifacts = []
            try:
                if inst.kind == "bipartite":
                    lifted = lift_bipartite(g, oracle3.witness, inst.variant)
                else:
                    pg = build_plane_graph(g, inst.rotation)
                    lifted = lift_planar(pg, oracle3.witness)
                tally.check(f"{base_id}-lift", lifted.graph, lifted.coloring)
                restricted = restrict_coloring(lifted.coloring, range(g.n))
                round_trip = restricted.assignment == oracle3.witness.assignment
                artifacts += _write_artifact(
                    out_path, f"{base_id}-lift.coloring.txt", write_coloring(lifted.coloring)
                )
                verdict = VERIFIED if round_trip else REFUTED
                detail = {"extension_vertices": lifted.graph.n, "round_trip": round_trip}
            except Exception as exc:  # refutation evidence, not a crash
                verdict = REFUTED
                detail = {"error": str(exc)}
            cases.append(
                CaseRecord(
                    id=f"{base_id}-lift",
                    claim=f"{inst.name}: a 3-color certificate lifts to a valid "
                    f"4-color certificate of the {inst.kind} extension",
                    ref=ref,
                    verdict=verdict,
                    artifact_paths=artifacts,
                    detail=detail,
                )
            )

            result = decide_coloring(ext.graph, 4, inst.variant, budget=budget, eager=eager)
            artifacts = []
            if result.status == SAT:
                tally.check(f"{base_id}-reverse", ext.graph, result.witness)
                restricted = restrict_coloring(result.witness, range(g.n))
                report = CHECKERS[inst.variant](g, restricted)
                ok = report.verdict and restricted.num_colors_used() <= 3
                artifacts += _write_artifact(
                    out_path, f"{base_id}-solver.coloring.txt", write_coloring(result.witness)
                )
                verdict = VERIFIED if ok else REFUTED
                detail = {
                    "status": result.status,
                    "nodes": result.stats.nodes,
                    "restriction_valid": report.verdict,
                    "restriction_colors": restricted.num_colors_used(),
                }
            elif result.status == TIMEOUT:
                verdict = TIMED_OUT
                detail = {"status": result.status, "nodes": result.stats.nodes}
            else:
                verdict = REFUTED
                detail = {"status": result.status, "nodes": result.stats.nodes}
            cases.append(
                CaseRecord(
                    id=f"{base_id}-reverse",
                    claim=f"{inst.name}: any solver-found 4-coloring of the extension "
                    "restricts to a valid 3-coloring of the base graph",
                    ref=ref,
                    verdict=verdict,
                    artifact_paths=artifacts,
                    detail=detail,
                )
            )
        else:
            formula = encode_cnf(ext.graph, 4, inst.variant)
            artifacts = _write_artifact(
                out_path, f"{base_id}-no4coloring.cnf", formula.to_dimacs()
            )
            result = decide_coloring(ext.graph, 4, inst.variant, budget=budget, eager=eager)
            if result.status == UNSAT:
                verdict = VERIFIED
            elif result.status == TIMEOUT:
                verdict = TIMED_OUT
            else:
                verdict = REFUTED
            cases.append(
                CaseRecord(
                    id=f"{base_id}-unsat",
                    claim=f"{inst.name}: the base graph has no {inst.variant} 3-coloring "
                    "(oracle-established), so the extension has no 4-coloring",
                    ref=ref,
                    verdict=verdict,
                    artifact_paths=artifacts,
                    detail={
                        "status": result.status,
                        "nodes": result.stats.nodes,
                        "cnf_vars": formula.num_vars,
                        "cnf_clauses": len(formula.clauses),
                    },
                )
            )

    budgets = dict(budget.to_dict(), eager=eager)
    return SuiteReport(
        suite="reductions",
        seed=None,
        budgets=budgets,
        cases=cases,
        summary=_summarize(cases, tally.summary()),
    )
