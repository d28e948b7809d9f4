"""Exact decision and optimization for proper / conflict-free / odd colorings.

decide_coloring runs a complete backtracking search: vertices in descending
degree order (ties by id), colors ascending, with canonical symmetry breaking
that caps the first vertex at color 1 and every later vertex at one more than
the largest color used so far.  Properness is enforced at assignment time;
the conflict-free / odd condition of a vertex is tested as soon as its closed
neighborhood is fully colored.  UNSAT is only ever reported after the search
space is exhausted; running out of budget yields TIMEOUT, never a verdict.

brute_force_oracle is a deliberately separate code path that enumerates all
k^n colorings in lexicographic order and evaluates the predicates directly.
It exists so solver results can be cross-checked against an implementation
that shares no search logic with them.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from itertools import product
from typing import Literal

from .coloring import CHECKERS, Coloring, make_coloring
from .graph import Graph, GraphError

Variant = Literal["proper", "pcf", "odd"]
VARIANTS: tuple[str, ...] = ("proper", "pcf", "odd")

SAT = "SAT"
UNSAT = "UNSAT"
TIMEOUT = "TIMEOUT"

DEFAULT_MAX_NODES = 10_000_000
DEFAULT_MAX_SECONDS = 60.0
ORACLE_CAP = 100_000_000


class OracleCapError(ValueError):
    """The oracle refuses instances beyond its enumeration cap."""


class SolveTimeout(RuntimeError):
    """A chromatic-number sweep ran out of budget.

    Carries the bracketing interval established so far: every k < lower was
    proven UNSAT; upper is the smallest k proven SAT, or None.
    """

    def __init__(self, variant: str, lower: int, upper: int | None):
        super().__init__(f"budget exhausted for {variant}: chromatic number in [{lower}, {upper})")
        self.variant = variant
        self.lower = lower
        self.upper = upper


@dataclass(frozen=True)
class Budget:
    max_nodes: int | None = DEFAULT_MAX_NODES
    max_seconds: float | None = DEFAULT_MAX_SECONDS

    def to_dict(self) -> dict:
        return {"max_nodes": self.max_nodes, "max_seconds": self.max_seconds}


@dataclass(frozen=True)
class SolveStats:
    nodes: int
    elapsed: float


@dataclass(frozen=True)
class SolveResult:
    status: str
    witness: Coloring | None
    stats: SolveStats
    budget: Budget | None = None

    def to_json(self) -> str:
        return json.dumps(
            {
                "status": self.status,
                "witness": None
                if self.witness is None
                else {str(v): c for v, c in self.witness.as_sorted_items()},
                "k": None if self.witness is None else self.witness.k,
                "stats": {"nodes": self.stats.nodes, "elapsed": self.stats.elapsed},
                "budget": None if self.budget is None else self.budget.to_dict(),
            },
            sort_keys=True,
        )


def _validate_variant(variant: str) -> None:
    if variant not in VARIANTS:
        raise GraphError(f"unknown variant {variant!r}; expected one of {VARIANTS}")


def decide_coloring(
    g: Graph,
    k: int,
    variant: Variant,
    budget: Budget | None = None,
    eager: bool = False,
) -> SolveResult:
    """Decide whether g admits a k-coloring of the given variant.

    Returns SAT with a checker-verified witness, UNSAT after complete
    search, or TIMEOUT when the budget runs out.  With eager=True the
    conflict-free / odd condition of a vertex is additionally tested as soon
    as its open neighborhood is fully colored, and a vertex all of whose
    palette colors already appear twice among colored neighbors prunes the
    branch early; this narrows the search but never changes verdicts.
    """
    _validate_variant(variant)
    if k < 1:
        raise GraphError(f"palette size must be >= 1, got {k}")
    if budget is None:
        budget = Budget()
    start = time.perf_counter()
    n = g.n
    if n == 0:
        return SolveResult(SAT, Coloring({}, k=k), SolveStats(0, 0.0), budget)

    order = sorted(range(n), key=lambda v: (-len(g.adj[v]), v))
    adj = [tuple(sorted(g.adj[v])) for v in range(n)]
    deg = [len(adj[v]) for v in range(n)]
    colors = [0] * n
    # uncolored vertices remaining in the closed / open neighborhood of v
    closed_rem = [deg[v] + 1 for v in range(n)]
    open_rem = deg[:]
    # counts[v][c] = multiplicity of color c among colored neighbors of v
    counts = [[0] * (k + 1) for _ in range(n)]

    structural = variant != "proper"
    check_pcf = variant == "pcf"

    max_nodes = budget.max_nodes
    max_seconds = budget.max_seconds
    nodes = 0
    timed_out = False

    def vertex_ok(w: int) -> bool:
        cw = counts[w]
        if check_pcf:
            for c in range(1, k + 1):
                if cw[c] == 1:
                    return True
            return False
        for c in range(1, k + 1):
            if cw[c] % 2 == 1:
                return True
        return False

    def place(v0: int, c: int) -> list[int]:
        """Apply assignment, returning vertices whose check now fires."""
        colors[v0] = c
        fire: list[int] = []
        closed_rem[v0] -= 1
        if closed_rem[v0] == 0 and deg[v0] > 0:
            fire.append(v0)
        for w in adj[v0]:
            closed_rem[w] -= 1
            open_rem[w] -= 1
            counts[w][c] += 1
            if closed_rem[w] == 0 and deg[w] > 0:
                fire.append(w)
            elif eager and open_rem[w] == 0 and deg[w] > 0 and colors[w] == 0:
                fire.append(w)
        return fire

    def unplace(v0: int, c: int) -> None:
        colors[v0] = 0
        closed_rem[v0] += 1
        for w in adj[v0]:
            closed_rem[w] += 1
            open_rem[w] += 1
            counts[w][c] -= 1

    def eager_dead(v0: int) -> bool:
        # conflict-free only: once every palette color appears >= 2 times
        # among colored neighbors, no color can ever become unique
        for w in adj[v0]:
            if open_rem[w] > 0:
                cw = counts[w]
                if all(cw[c] >= 2 for c in range(1, k + 1)):
                    return True
        return False

    def search(idx: int, max_used: int) -> bool:
        nonlocal nodes, timed_out
        if idx == n:
            return True
        v = order[idx]
        limit = min(k, max_used + 1)
        forbidden = 0
        for w in adj[v]:
            if colors[w]:
                forbidden |= 1 << colors[w]
        for c in range(1, limit + 1):
            if forbidden >> c & 1:
                continue
            nodes += 1
            if max_nodes is not None and nodes > max_nodes:
                timed_out = True
                return False
            if max_seconds is not None and nodes % 2048 == 0:
                if time.perf_counter() - start > max_seconds:
                    timed_out = True
                    return False
            if structural:
                fire = place(v, c)
                ok = all(vertex_ok(w) for w in fire)
                if ok and eager and check_pcf:
                    ok = not eager_dead(v)
                if ok and search(idx + 1, max(max_used, c)):
                    return True
                unplace(v, c)
                if timed_out:
                    return False
            else:
                colors[v] = c
                if search(idx + 1, max(max_used, c)):
                    return True
                colors[v] = 0
                if timed_out:
                    return False
        return False

    found = search(0, 0)
    elapsed = time.perf_counter() - start
    stats = SolveStats(nodes=nodes, elapsed=elapsed)
    if timed_out:
        return SolveResult(TIMEOUT, None, stats, budget)
    if not found:
        return SolveResult(UNSAT, None, stats, budget)
    witness = make_coloring({v: colors[v] for v in range(n)}, k=k)
    report = CHECKERS[variant](g, witness)
    if not report.verdict:
        raise RuntimeError(
            f"internal error: search produced an invalid {variant} witness"
        )
    return SolveResult(SAT, witness, stats, budget)


def chromatic_number(
    g: Graph,
    variant: Variant,
    budget: Budget | None = None,
    eager: bool = False,
) -> int:
    """Smallest k admitting a coloring of the given variant.

    Searches k upward from 1 (2 as soon as there is an edge).  A TIMEOUT at
    any k raises SolveTimeout carrying the interval proven so far.
    """
    _validate_variant(variant)
    k = 2 if g.m > 0 else 1
    while True:
        result = decide_coloring(g, k, variant, budget=budget, eager=eager)
        if result.status == SAT:
            return k
        if result.status == TIMEOUT:
            raise SolveTimeout(variant, lower=k, upper=None)
        k += 1


def _oracle_proper(edges, coloring) -> bool:
    for u, v in edges:
        if coloring[u] == coloring[v]:
            return False
    return True


def _oracle_vertex_ok(adj_v, coloring, k: int, want_pcf: bool) -> bool:
    counts = [0] * (k + 1)
    for w in adj_v:
        counts[coloring[w]] += 1
    if want_pcf:
        return 1 in counts
    return any(c % 2 == 1 for c in counts[1:])


def brute_force_oracle(
    g: Graph, k: int, variant: Variant, cap: int = ORACLE_CAP
) -> SolveResult:
    """Exhaustively enumerate all k^n colorings in lexicographic order.

    Refuses (raises OracleCapError) when k^n exceeds the cap; the refusal is
    deliberate and distinct from TIMEOUT, which the oracle never returns.
    """
    _validate_variant(variant)
    if k < 1:
        raise GraphError(f"palette size must be >= 1, got {k}")
    if k**g.n > cap:
        raise OracleCapError(
            f"enumeration of {k}^{g.n} colorings exceeds the cap of {cap}"
        )
    start = time.perf_counter()
    edges = g.sorted_edges()
    want_pcf = variant == "pcf"
    structural = variant != "proper"
    check_vertices = [
        (v, tuple(g.adj[v])) for v in range(g.n) if g.adj[v]
    ]
    examined = 0
    for coloring in product(range(1, k + 1), repeat=g.n):
        examined += 1
        if not _oracle_proper(edges, coloring):
            continue
        if structural and not all(
            _oracle_vertex_ok(adj_v, coloring, k, want_pcf)
            for _, adj_v in check_vertices
        ):
            continue
        witness = make_coloring(coloring, k=k)
        return SolveResult(
            SAT, witness, SolveStats(examined, time.perf_counter() - start)
        )
    return SolveResult(UNSAT, None, SolveStats(examined, time.perf_counter() - start))
