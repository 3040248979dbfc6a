"""Decision, counting and exact uniform sampling for (<=2)-CNF.

The decision solver is the classic implication-graph / SCC algorithm of
Aspvall, Plass and Tarjan.  The counter is a self-reducibility branching
counter in the style of Wahlstrom's #2-SAT algorithm: branch on a
maximum-occurrence variable, propagate units, multiply across connected
components, and memoize components under a canonical renumbering.  The
certified analysis constant c = 1.2377 for that algorithm lives in the
analysis module; here only exact counts matter.

Counts are Python ints, so they are exact at any size.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .cnf import Assignment, Clause, CnfFormula, restrict_clauses
from .errors import NotTwoCnf, NotUnitCnf, Unsatisfiable


def _require_width(formula: CnfFormula, width: int) -> None:
    if formula.max_width() > width:
        exc = NotTwoCnf if width == 2 else NotUnitCnf
        raise exc(f"clause width {formula.max_width()} exceeds {width}")


# -- decision: implication graph + SCC ---------------------------------


class ImplicationGraph:
    """Directed graph on literal nodes: clause {u, v} gives -u -> v, -v -> u.

    A unit clause {u} behaves like {u, u} and contributes -u -> u.  The
    graph is skew symmetric: u -> v is an arc iff -v -> -u is.
    """

    def __init__(self, formula: CnfFormula):
        _require_width(formula, 2)
        succ: dict[int, list[int]] = {}
        for v in formula.universe:
            succ[v] = []
            succ[-v] = []
        for clause in formula.clauses:
            lits = clause.literals
            if len(lits) == 1:
                (u,) = lits
                succ[-u].append(u)
            elif len(lits) == 2:
                u, v = lits
                succ[-u].append(v)
                succ[-v].append(u)
            # the empty clause has no graph encoding; callers check for it
        self.succ = {lit: tuple(out) for lit, out in succ.items()}
        self.nodes = sorted(self.succ, key=lambda l: (abs(l), l))

    def successors(self, lit: int) -> tuple[int, ...]:
        return self.succ[lit]

    def arcs(self):
        for u in self.nodes:
            for v in self.succ[u]:
                yield u, v

    def is_skew_symmetric(self) -> bool:
        arcset = {(u, v) for u, v in self.arcs()}
        return all((-v, -u) in arcset for u, v in arcset)

    def scc_ids(self) -> dict[int, int]:
        """Tarjan component ids; ids increase in reverse topological order."""
        index: dict[int, int] = {}
        low: dict[int, int] = {}
        comp: dict[int, int] = {}
        stack: list[int] = []
        on_stack: set[int] = set()
        counter = 0
        ncomp = 0
        for root in self.nodes:
            if root in index:
                continue
            work = [(root, 0)]
            while work:
                node, pi = work[-1]
                if pi == 0:
                    index[node] = low[node] = counter
                    counter += 1
                    stack.append(node)
                    on_stack.add(node)
                advanced = False
                succ = self.succ[node]
                while pi < len(succ):
                    w = succ[pi]
                    pi += 1
                    if w not in index:
                        work[-1] = (node, pi)
                        work.append((w, 0))
                        advanced = True
                        break
                    if w in on_stack:
                        low[node] = min(low[node], index[w])
                if advanced:
                    continue
                work.pop()
                if low[node] == index[node]:
                    while True:
                        w = stack.pop()
                        on_stack.discard(w)
                        comp[w] = ncomp
                        if w == node:
                            break
                    ncomp += 1
                if work:
                    parent = work[-1][0]
                    low[parent] = min(low[parent], low[node])
        return comp


def solve_2sat(formula: CnfFormula) -> Assignment | None:
    """A satisfying assignment over the whole universe, or None if UNSAT.

    Deterministic: variables absent from every clause are set to 0, and
    constrained variables follow the SCC condensation order.
    """
    _require_width(formula, 2)
    if formula.has_empty_clause():
        return None
    graph = ImplicationGraph(formula)
    comp = graph.scc_ids()
    alpha: Assignment = {}
    for v in sorted(formula.universe):
        cv, cn = comp[v], comp[-v]
        if cv == cn:
            return None
        alpha[v] = 1 if cv < cn else 0
    return alpha


# -- counting ----------------------------------------------------------


@dataclass(frozen=True)
class CountResult:
    """Exact model count plus the number of branch nodes expanded."""

    count: int
    nodes_expanded: int


def _propagate(clauses: tuple[Clause, ...]) -> tuple[tuple[Clause, ...], Assignment] | None:
    """Unit reduction on a clause tuple; None signals a conflict."""
    forced: Assignment = {}
    current = clauses
    while True:
        if any(not c.literals for c in current):
            return None
        unit = next((c for c in current if len(c.literals) == 1), None)
        if unit is None:
            return current, forced
        lit = unit.literals[0]
        forced[abs(lit)] = 1 if lit > 0 else 0
        current = restrict_clauses(current, {abs(lit): forced[abs(lit)]})


def _clause_vars(clauses: tuple[Clause, ...]) -> frozenset[int]:
    return frozenset(abs(l) for c in clauses for l in c.literals)


def _components(clauses: tuple[Clause, ...]) -> list[tuple[Clause, ...]]:
    """Split into variable-connected components, ordered by first clause."""
    var_to: dict[int, list[int]] = {}
    for i, c in enumerate(clauses):
        for lit in c.literals:
            var_to.setdefault(abs(lit), []).append(i)
    seen = [False] * len(clauses)
    comps: list[tuple[Clause, ...]] = []
    for i in range(len(clauses)):
        if seen[i]:
            continue
        queue = [i]
        seen[i] = True
        members = []
        while queue:
            j = queue.pop()
            members.append(j)
            for lit in clauses[j].literals:
                for k in var_to[abs(lit)]:
                    if not seen[k]:
                        seen[k] = True
                        queue.append(k)
        members.sort()
        comps.append(tuple(clauses[j] for j in members))
    return comps


def _canonical(clauses: tuple[Clause, ...]) -> tuple:
    """Memo key: clauses sorted after renumbering variables by first occurrence."""
    rename: dict[int, int] = {}
    for c in clauses:
        for lit in c.literals:
            if abs(lit) not in rename:
                rename[abs(lit)] = len(rename) + 1
    out = []
    for c in clauses:
        lits = tuple(
            sorted(
                (rename[abs(l)] if l > 0 else -rename[abs(l)] for l in c.literals),
                key=lambda x: (abs(x), x),
            )
        )
        out.append(lits)
    out.sort()
    return tuple(out)


def _count(
    clauses: tuple[Clause, ...],
    universe: frozenset[int],
    memo: dict,
    counter: list[int],
) -> int:
    prop = _propagate(clauses)
    if prop is None:
        return 0
    residual, forced = prop
    remaining = universe.difference(forced)
    vbl = _clause_vars(residual)
    total = 1 << (len(remaining) - len(vbl))
    for comp in _components(residual):
        total *= _count_component(comp, memo, counter)
        if total == 0:
            return 0
    return total


def _count_component(
    clauses: tuple[Clause, ...], memo: dict, counter: list[int]
) -> int:
    key = _canonical(clauses)
    cached = memo.get(key)
    if cached is not None:
        return cached
    counter[0] += 1
    occ: dict[int, int] = {}
    for c in clauses:
        for lit in c.literals:
            occ[abs(lit)] = occ.get(abs(lit), 0) + 1
    var = min(occ, key=lambda v: (-occ[v], v))
    vbl = _clause_vars(clauses)
    total = 0
    for bit in (1, 0):
        total += _count(
            restrict_clauses(clauses, {var: bit}), vbl - {var}, memo, counter
        )
    memo[key] = total
    return total


def count_2sat(formula: CnfFormula) -> CountResult:
    """Exact |sat(F)| for a (<=2)-CNF via the branching counter.

    The memo table lives for the duration of one call only.
    """
    _require_width(formula, 2)
    counter = [0]
    count = _count(formula.clauses, formula.universe, {}, counter)
    return CountResult(count=count, nodes_expanded=counter[0])


def count_leq1(formula: CnfFormula) -> int:
    """|sat(F)| for a (<=1)-CNF: 0 on conflict, else 2^(free variables)."""
    _require_width(formula, 1)
    prop = _propagate(formula.clauses)
    if prop is None:
        return 0
    _, forced = prop
    return 1 << (formula.num_vars - len(forced))


def sample_leq1(formula: CnfFormula, rng: random.Random) -> Assignment:
    """Uniform satisfying assignment of a (<=1)-CNF."""
    _require_width(formula, 1)
    prop = _propagate(formula.clauses)
    if prop is None:
        raise Unsatisfiable("unit conflict")
    _, forced = prop
    alpha = dict(forced)
    for v in sorted(formula.universe.difference(forced)):
        alpha[v] = rng.randrange(2)
    return alpha


# -- exact uniform sampling --------------------------------------------


class ChainSampler:
    """Uniform sampling of sat(F) by counting-guided branching.

    Each draw walks down the self-reduction tree, choosing each branch
    with probability proportional to its exact model count; by the chain
    rule every satisfying assignment has probability exactly 1/|sat(F)|.

    Chain nodes and their branch counts are cached so repeated draws skip
    recomputation, but cached counts replay the branch-node cost a fresh
    computation would have paid, keeping work counters reproducible.
    """

    def __init__(self, formula: CnfFormula):
        _require_width(formula, 2)
        self.formula = formula
        self._nodes: dict = {}
        self._counts: dict = {}
        self.work = 0
        self.total_count, self.root_cost = self._counted(
            formula.clauses, formula.universe
        )

    def _counted(self, clauses: tuple[Clause, ...], universe: frozenset[int]):
        key = (frozenset(c._key for c in clauses), universe)
        hit = self._counts.get(key)
        if hit is None:
            counter = [0]
            hit = (_count(clauses, universe, {}, counter), counter[0])
            self._counts[key] = hit
        return hit

    def _node(self, clauses: tuple[Clause, ...], universe: frozenset[int]):
        key = (frozenset(c._key for c in clauses), universe)
        node = self._nodes.get(key)
        if node is not None:
            return node
        prop = _propagate(clauses)
        assert prop is not None, "sampler entered a zero-count branch"
        residual, forced = prop
        remaining = universe.difference(forced)
        if not residual:
            node = ("leaf", forced, remaining)
        else:
            var = min(_clause_vars(residual))
            sub = []
            cost = 0
            for bit in (0, 1):
                rc = restrict_clauses(residual, {var: bit})
                ru = remaining - {var}
                cnt, nodes = self._counted(rc, ru)
                cost += nodes
                sub.append((cnt, rc, ru))
            node = ("branch", forced, var, sub, cost)
        self._nodes[key] = node
        return node

    def draw(self, rng: random.Random, trace: list | None = None) -> Assignment:
        if self.total_count == 0:
            raise Unsatisfiable("formula has no satisfying assignment")
        # a fresh draw would recount the whole formula before branching
        self.work += self.root_cost
        alpha: Assignment = {}
        clauses, universe = self.formula.clauses, self.formula.universe
        while True:
            node = self._node(clauses, universe)
            if node[0] == "leaf":
                _, forced, remaining = node
                alpha.update(forced)
                for v in sorted(remaining):
                    alpha[v] = rng.randrange(2)
                    if trace is not None:
                        trace.append((1, 2))
                return alpha
            _, forced, var, sub, cost = node
            alpha.update(forced)
            self.work += cost
            (c0, rc0, ru0), (c1, rc1, ru1) = sub
            r = rng.randrange(c0 + c1)
            if r < c1:
                alpha[var] = 1
                clauses, universe = rc1, ru1
                if trace is not None:
                    trace.append((c1, c0 + c1))
            else:
                alpha[var] = 0
                clauses, universe = rc0, ru0
                if trace is not None:
                    trace.append((c0, c0 + c1))


def sample_2sat_exact(formula: CnfFormula, rng: random.Random) -> Assignment:
    """One exact uniform satisfying assignment of a (<=2)-CNF."""
    return ChainSampler(formula).draw(rng)
