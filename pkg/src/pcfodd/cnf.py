"""CNF encodings of the three coloring predicates, DIMACS I/O, and a small
complete SAT search for desk-scale formulas.

Variable layout: x(v,c) gets id v*k + c, so ids 1..n*k are the primary
one-hot color variables.  Auxiliary variables follow:

* conflict-free: a selector u(v,w,c) per non-isolated v, neighbor w and
  color c, meaning "w is v's unique c-colored neighbor".  Clauses force
  u -> x(w,c) and u -> -x(w',c) for the other neighbors w', and one long
  clause per vertex demands some selector.
* odd: a sequential parity chain per (v,c) over v's neighbors.  Every link
  is a full 4-clause XOR equivalence, so the final chain literal is exactly
  "color c has odd multiplicity in N(v)"; one clause per vertex demands some
  odd color.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

from .coloring import Coloring
from .graph import Graph, GraphError
from .solver import SAT, UNSAT, Variant, _validate_variant


@dataclass
class CnfFormula:
    num_vars: int
    clauses: list[tuple[int, ...]]
    comments: list[str]
    var_map: dict[int, tuple[int, int]]  # var id -> (vertex, color)
    n: int
    k: int
    variant: str

    def to_dimacs(self) -> str:
        lines = list(self.comments)
        lines.append(f"p cnf {self.num_vars} {len(self.clauses)}")
        for cl in self.clauses:
            lines.append(" ".join(str(lit) for lit in cl) + " 0")
        return "\n".join(lines) + "\n"

    def decode(self, model: list[int]) -> Coloring:
        """Coloring from a model given as signed literals or a truth array."""
        true_vars = set()
        for entry in model:
            if entry > 0:
                true_vars.add(entry)
        assignment: dict[int, int] = {}
        for var, (v, c) in self.var_map.items():
            if var in true_vars:
                if v in assignment:
                    raise GraphError(f"model colors vertex {v} twice")
                assignment[v] = c
        missing = [v for v in range(self.n) if v not in assignment]
        if missing:
            raise GraphError(f"model leaves vertices {missing[:8]} uncolored")
        return Coloring(assignment=assignment, k=self.k)


def encode_cnf(g: Graph, k: int, variant: Variant) -> CnfFormula:
    """DIMACS-ready CNF satisfiable iff g has a k-coloring of the variant."""
    _validate_variant(variant)
    if k < 1:
        raise GraphError(f"palette size must be >= 1, got {k}")
    n = g.n
    comments: list[str] = []
    var_map: dict[int, tuple[int, int]] = {}
    clauses: list[tuple[int, ...]] = []

    def x(v: int, c: int) -> int:
        return v * k + c

    next_var = n * k + 1
    for v in range(n):
        for c in range(1, k + 1):
            var_map[x(v, c)] = (v, c)
            comments.append(f"c var {x(v, c)} = x {v} {c}")

    # one color per vertex
    for v in range(n):
        clauses.append(tuple(x(v, c) for c in range(1, k + 1)))
        for c1 in range(1, k + 1):
            for c2 in range(c1 + 1, k + 1):
                clauses.append((-x(v, c1), -x(v, c2)))

    # properness
    for u, v in g.sorted_edges():
        for c in range(1, k + 1):
            clauses.append((-x(u, c), -x(v, c)))

    if variant == "pcf":
        for v in range(n):
            nbrs = sorted(g.adj[v])
            if not nbrs:
                continue
            selectors = []
            for w in nbrs:
                for c in range(1, k + 1):
                    u_var = next_var
                    next_var += 1
                    comments.append(f"c aux {u_var} = u {v} {w} {c}")
                    clauses.append((-u_var, x(w, c)))
                    for w2 in nbrs:
                        if w2 != w:
                            clauses.append((-u_var, -x(w2, c)))
                    selectors.append(u_var)
            clauses.append(tuple(selectors))
    elif variant == "odd":
        for v in range(n):
            nbrs = sorted(g.adj[v])
            if not nbrs:
                continue
            finals = []
            for c in range(1, k + 1):
                lit = x(nbrs[0], c)
                for i, w in enumerate(nbrs[1:], start=2):
                    t = next_var
                    next_var += 1
                    comments.append(f"c aux {t} = parity {v} {c} {i}")
                    b = x(w, c)
                    # t <-> lit XOR b
                    clauses.append((-t, -lit, -b))
                    clauses.append((-t, lit, b))
                    clauses.append((t, -lit, b))
                    clauses.append((t, lit, -b))
                    lit = t
                finals.append(lit)
            clauses.append(tuple(finals))

    return CnfFormula(
        num_vars=next_var - 1,
        clauses=clauses,
        comments=comments,
        var_map=var_map,
        n=n,
        k=k,
        variant=variant,
    )


@dataclass
class ParsedCnf:
    num_vars: int
    clauses: list[tuple[int, ...]]
    var_map: dict[int, tuple[int, int]]


def parse_dimacs(text: str) -> ParsedCnf:
    num_vars = 0
    num_clauses = None
    clauses: list[tuple[int, ...]] = []
    var_map: dict[int, tuple[int, int]] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("c"):
            parts = line.split()
            if len(parts) == 7 and parts[1] == "var" and parts[4] == "x":
                var_map[int(parts[2])] = (int(parts[5]), int(parts[6]))
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise GraphError(f"malformed DIMACS header: {line!r}")
            num_vars = int(parts[2])
            num_clauses = int(parts[3])
            continue
        lits = [int(t) for t in line.split()]
        if lits and lits[-1] == 0:
            lits.pop()
        clauses.append(tuple(lits))
    if num_clauses is not None and num_clauses != len(clauses):
        raise GraphError(
            f"DIMACS header promises {num_clauses} clauses, found {len(clauses)}"
        )
    return ParsedCnf(num_vars=num_vars, clauses=clauses, var_map=var_map)


def solve_cnf(
    num_vars: int, clauses, max_steps: int | None = None
) -> tuple[str, list[int] | None]:
    """Complete DPLL with unit propagation and two watched literals.

    Returns (SAT, model-as-signed-literals) or (UNSAT, None).  Branching is
    on ascending variable id with the positive phase first, which on the
    encodings above imitates a greedy coloring search.  max_steps bounds
    propagation work; exceeding it raises RuntimeError, so a cap can never
    be mistaken for a verdict.
    """
    cl = [list(c) for c in clauses]
    assign = [0] * (num_vars + 1)
    trail: list[int] = []
    watches: list[list[int]] = [[] for _ in range(2 * num_vars + 2)]

    def idx(lit: int) -> int:
        return (lit << 1) if lit > 0 else ((-lit) << 1) + 1

    units: list[int] = []
    for ci, c in enumerate(cl):
        if len(c) == 0:
            return UNSAT, None
        if len(c) == 1:
            units.append(c[0])
        else:
            watches[idx(c[0])].append(ci)
            watches[idx(c[1])].append(ci)

    prop_head = 0
    steps = 0

    def enqueue(lit: int) -> bool:
        var = abs(lit)
        val = 1 if lit > 0 else -1
        if assign[var] != 0:
            return assign[var] == val
        assign[var] = val
        trail.append(lit)
        return True

    def propagate() -> bool:
        nonlocal prop_head, steps
        while prop_head < len(trail):
            lit = trail[prop_head]
            prop_head += 1
            steps += 1
            if max_steps is not None and steps > max_steps:
                raise RuntimeError("solve_cnf exceeded its step budget")
            false_lit = -lit
            wl = watches[idx(false_lit)]
            i = 0
            while i < len(wl):
                ci = wl[i]
                c = cl[ci]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                first = c[0]
                v0 = assign[abs(first)]
                if v0 == (1 if first > 0 else -1):
                    i += 1
                    continue
                moved = False
                for j in range(2, len(c)):
                    lj = c[j]
                    vj = assign[abs(lj)]
                    if vj == 0 or vj == (1 if lj > 0 else -1):
                        c[1], c[j] = c[j], c[1]
                        watches[idx(lj)].append(ci)
                        wl[i] = wl[-1]
                        wl.pop()
                        moved = True
                        break
                if moved:
                    continue
                if v0 == 0:
                    if not enqueue(first):
                        return False
                    i += 1
                else:
                    return False
        return True

    for u in units:
        if not enqueue(u):
            return UNSAT, None
    if not propagate():
        return UNSAT, None

    def backtrack(mark: int) -> None:
        nonlocal prop_head
        for lit in trail[mark:]:
            assign[abs(lit)] = 0
        del trail[mark:]
        prop_head = mark

    def search(start_var: int) -> bool:
        var = start_var
        while var <= num_vars and assign[var] != 0:
            var += 1
        if var > num_vars:
            return True
        for phase in (var, -var):
            mark = len(trail)
            enqueue(phase)
            if propagate() and search(var + 1):
                return True
            backtrack(mark)
        return False

    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, num_vars + 200))
    try:
        if search(1):
            model = [v if assign[v] >= 0 else -v for v in range(1, num_vars + 1)]
            return SAT, model
        return UNSAT, None
    finally:
        sys.setrecursionlimit(old_limit)


def cnf_status(g: Graph, k: int, variant: Variant, max_steps: int | None = None) -> str:
    """Satisfiability verdict of encode_cnf(g, k, variant) via solve_cnf."""
    formula = encode_cnf(g, k, variant)
    status, _ = solve_cnf(formula.num_vars, formula.clauses, max_steps=max_steps)
    return status
