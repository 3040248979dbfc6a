"""Breadth-first branching search over floors of fixed-variable counts.

The search tree is explored floor by floor: floor l holds the nodes
whose accumulated partial assignment fixes exactly l variables.  With a
branching rule whose vectors all have branching number at most lambda,
|floor l| <= lambda^l, and under a solution-density promise epsilon the
first satisfying node appears within log_{lambda/2}(epsilon/c_lambda)
floors, c_lambda = 2/(2 - lambda).

Two rules ship: Monien-Speckenmeyer branching on a shortest clause with
autarky detection (vectors (1) and (1,2,...,j)), and the same branching
without the autarky shortcut.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .cnf import Assignment, CnfFormula
from .errors import (
    DomainError,
    EmptyClausePresent,
    LambdaOutOfRange,
    NodeBudgetExceeded,
)


@dataclass(frozen=True)
class BranchingRule:
    """A sound branching: the returned partial assignments cover every
    satisfying assignment of the input formula."""

    name: str
    produce: Callable[[CnfFormula], list[Assignment]]


def _shortest_clause(formula: CnfFormula):
    best = None
    for i, c in enumerate(formula.clauses):
        if not c.literals:
            raise EmptyClausePresent("branching on a formula containing the empty clause")
        if best is None or len(c.literals) < len(best.literals):
            best = c
    return best


def _branchings(clause) -> list[Assignment]:
    out = []
    beta: Assignment = {}
    for lit in clause.literals:
        step = dict(beta)
        step[abs(lit)] = 1 if lit > 0 else 0
        out.append(step)
        beta[abs(lit)] = 0 if lit > 0 else 1
    return out


def is_autark(formula: CnfFormula, beta: Assignment) -> bool:
    """True when every clause touching vbl(beta) is satisfied by beta."""
    for c in formula.clauses:
        touched = satisfied = False
        for lit in c.literals:
            v = abs(lit)
            if v in beta:
                touched = True
                if beta[v] == (1 if lit > 0 else 0):
                    satisfied = True
                    break
        if touched and not satisfied:
            return False
    return True


def ms_branch(formula: CnfFormula) -> list[Assignment]:
    """Shortest-clause branching with the autarky shortcut.

    Branch i sets the clause's first i-1 literals false and the i-th
    true; if some branch is autark it is returned alone, since applying
    an autark assignment preserves satisfiability.
    """
    if formula.is_empty():
        raise DomainError("nothing to branch on: formula has no clauses")
    branches = _branchings(_shortest_clause(formula))
    for beta in branches:
        if is_autark(formula, beta):
            return [beta]
    return branches


def basic_branch(formula: CnfFormula) -> list[Assignment]:
    """Shortest-clause branching without autarky detection."""
    if formula.is_empty():
        raise DomainError("nothing to branch on: formula has no clauses")
    return _branchings(_shortest_clause(formula))


MS_RULE = BranchingRule(name="ms-autark", produce=ms_branch)
BASIC_RULE = BranchingRule(name="basic", produce=basic_branch)


@dataclass
class BfsResult:
    status: str  # "sat" | "unsat"
    assignment: Assignment | None
    solution_floor: int | None
    floors: dict[int, int]
    nodes_expanded: int
    lambda_run: float
    lambda_nominal: float
    vectors_seen: tuple[tuple[int, ...], ...]
    epsilon: float | None = None
    floor_bound: float | None = None
    promise_ok: bool | None = None

    def as_dict(self) -> dict:
        out = {
            "status": self.status,
            "solution_floor": self.solution_floor,
            "floors": {k: v for k, v in sorted(self.floors.items())},
            "nodes_expanded": self.nodes_expanded,
            "lambda_run": self.lambda_run,
            "lambda_nominal": self.lambda_nominal,
        }
        if self.assignment is not None:
            out["assignment"] = "".join(
                str(self.assignment[v]) for v in sorted(self.assignment)
            )
        if self.epsilon is not None:
            out["epsilon"] = self.epsilon
            out["floor_bound"] = self.floor_bound
            out["promise_ok"] = self.promise_ok
        return out


def stopping_bound(lam: float, epsilon: float) -> float:
    """log_{lam/2}(epsilon / c_lam) with c_lam = 2/(2-lam); the floor by
    which a solution must appear under the density promise."""
    if not 1.0 <= lam < 2.0:
        raise LambdaOutOfRange(f"lambda {lam} outside [1, 2)")
    if not 0.0 < epsilon <= 1.0:
        raise DomainError(f"epsilon {epsilon} outside (0, 1]")
    c_lam = 2.0 / (2.0 - lam)
    return math.log(epsilon / c_lam) / math.log(lam / 2.0)


def _node_key(formula: CnfFormula, beta: Assignment):
    return (formula._clause_keys, formula.universe, tuple(sorted(beta.items())))


def bfs_solve(
    formula: CnfFormula,
    rule: BranchingRule = MS_RULE,
    epsilon: float | None = None,
    max_nodes: int = 500_000,
    dedup: bool = False,
) -> BfsResult:
    """Floor-ordered search; SAT with a full assignment, or certified UNSAT.

    Nodes are processed in creation order within a floor, so the result
    is deterministic.  Children containing the empty clause are dropped.
    When epsilon is supplied the result carries the stopping-bound
    diagnostic computed with max(lambda_run, lambda_nominal).
    """
    from .analysis import branching_number

    # Worst steady vector of shortest-clause branching: (1,..,w-1) via
    # shortened clauses for w >= 3, but a 2-clause branches as (1,2).
    width = formula.max_width()
    nominal_vector = (1,) if width <= 1 else tuple(range(1, max(width - 1, 2) + 1))
    lambda_nominal = branching_number(nominal_vector)

    floors: dict[int, list[tuple[CnfFormula, Assignment]]] = {0: [(formula, {})]}
    census: dict[int, int] = {}
    vectors: set[tuple[int, ...]] = set()
    lambda_run = 1.0
    expanded = 0
    stored = 1
    solution: Assignment | None = None
    solution_floor: int | None = None

    level = 0
    while floors:
        level = min(floors)
        nodes = floors.pop(level)
        census[level] = len(nodes)
        seen_keys: set = set()
        for sub, part in nodes:
            if sub.has_empty_clause():
                continue
            if sub.is_empty():
                solution = dict(part)
                for v in sorted(formula.universe - part.keys()):
                    solution[v] = 0
                solution_floor = level
                break
            expanded += 1
            branches = rule.produce(sub)
            vector = tuple(len(b) for b in branches)
            if vector not in vectors:
                vectors.add(vector)
                lambda_run = max(lambda_run, branching_number(vector))
            for beta in branches:
                child = sub.restrict(beta)
                if child.has_empty_clause():
                    continue
                part2 = {**part, **beta}
                if dedup:
                    key = _node_key(child, part2)
                    if key in seen_keys:
                        continue
                    seen_keys.add(key)
                floors.setdefault(level + len(beta), []).append((child, part2))
                stored += 1
                if stored > max_nodes:
                    raise NodeBudgetExceeded(
                        f"floor storage exceeded {max_nodes} nodes at floor {level}"
                    )
        if solution is not None:
            break

    result = BfsResult(
        status="sat" if solution is not None else "unsat",
        assignment=solution,
        solution_floor=solution_floor,
        floors=census,
        nodes_expanded=expanded,
        lambda_run=lambda_run,
        lambda_nominal=lambda_nominal,
        vectors_seen=tuple(sorted(vectors)),
    )
    if epsilon is not None:
        lam = max(lambda_run, lambda_nominal)
        result.epsilon = epsilon
        result.floor_bound = stopping_bound(lam, epsilon)
        if solution_floor is not None:
            result.promise_ok = solution_floor <= result.floor_bound
    return result


def floor_census_rows(result: BfsResult) -> list[tuple[int, int, float]]:
    """(floor, size, lambda_run^floor) rows for the census report."""
    lam = result.lambda_run
    return [(l, c, lam**l) for l, c in sorted(result.floors.items())]
