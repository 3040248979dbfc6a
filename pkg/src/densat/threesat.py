"""Randomized 3-CNF decision procedures.

solve3_prop builds a maximal disjoint clause system S and races two
arms: rejection sampling over the pool of assignments satisfying S
(a (7/8)^|S| * 2^n fraction of the cube for width-3 clauses), and
enumeration of all local assignments to vbl(S), each leaving a width-<=2
residual for the polynomial 2-CNF solver.  The enumeration arm is a
complete decision procedure, so UNSAT verdicts are certified.

schoening is the restarted random walk: start uniform, up to 3n flips,
each flipping a uniformly random literal of the lowest-index unsatisfied
clause.  Success probability per restart is at least (k/(2(k-1)))^n for
k-CNF; the walk never certifies UNSAT.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .cnf import Assignment, CnfFormula
from .errors import DomainError, Unsatisfiable
from .families import max_disjoint_clauses
from .racing import race
from .sampler import _clause_solutions
from .twosat import solve_2sat


def _prop_rejection_arm(formula: CnfFormula, chosen, rng):
    locals_ = [_clause_solutions(c) for c in chosen]
    if any(not sols for sols in locals_):
        raise Unsatisfiable("empty clause present")
    covered = {v for c in chosen for v in c.variables}
    free = sorted(formula.universe.difference(covered))
    work = 0
    while True:
        alpha: Assignment = {}
        for sols in locals_:
            alpha.update(sols[rng.randrange(len(sols))])
        for v in free:
            alpha[v] = rng.randrange(2)
        work += 1
        if formula.evaluate(alpha):
            return alpha, work
        yield work


def _prop_enum_arm(formula: CnfFormula, chosen, rng):
    locals_ = [_clause_solutions(c) for c in chosen]
    work = 0
    for combo in itertools.product(*locals_):
        alpha: Assignment = {}
        for part in combo:
            alpha.update(part)
        work += 1
        sol = solve_2sat(formula.restrict(alpha))
        if sol is not None:
            return {**alpha, **sol}, work
        yield work
    raise Unsatisfiable("all local assignments to the disjoint system fail")


def solve3_prop(
    formula: CnfFormula, rng: random.Random, max_work: int | None = None
) -> Assignment | None:
    """Satisfying assignment or None (certified unsatisfiable).

    Every clause shares a variable with the maximal disjoint system, so
    each residual after assigning vbl(S) is a (<=2)-CNF.
    """
    if formula.max_width() > 3:
        raise DomainError("solve3_prop expects clauses of width at most 3")
    chosen = tuple(max_disjoint_clauses(formula))
    base = rng.getrandbits(63)
    arms = [
        ("rejection", _prop_rejection_arm(formula, chosen, random.Random(f"{base}:rejection"))),
        ("enumeration", _prop_enum_arm(formula, chosen, random.Random(f"{base}:enumeration"))),
    ]
    try:
        outcome = race(arms, max_work=max_work)
    except Unsatisfiable:
        return None
    assignment = outcome.value
    assert formula.evaluate(assignment), "solver produced a non-solution"
    return assignment


# ---------------------------------------------------------------------------
# restarted walk


@dataclass(frozen=True)
class WalkConfig:
    """flips_per_restart defaults to 3n when left None."""

    flips_per_restart: int | None = None
    max_restarts: int = 1000
    seed: int | None = None

    def __post_init__(self) -> None:
        if self.flips_per_restart is not None and self.flips_per_restart < 1:
            raise DomainError("flips_per_restart must be at least 1")
        if self.max_restarts < 1:
            raise DomainError("max_restarts must be at least 1")

    def flips_for(self, n: int) -> int:
        return 3 * n if self.flips_per_restart is None else self.flips_per_restart


@dataclass(frozen=True)
class WalkResult:
    assignment: Assignment | None
    restarts: int  # restarts consumed, including the successful one
    flips: int  # flips of the successful walk, 0-based

    @property
    def found(self) -> bool:
        return self.assignment is not None

    def as_dict(self) -> dict:
        out = {
            "status": "sat" if self.found else "unknown",
            "restarts": self.restarts,
            "flips": self.flips,
        }
        if self.assignment is not None:
            out["assignment"] = "".join(
                str(self.assignment[v]) for v in sorted(self.assignment)
            )
        return out


def _walk_once(formula: CnfFormula, flips: int, rng: random.Random):
    order = sorted(formula.universe)
    alpha = {v: rng.randrange(2) for v in order}
    clauses = formula.clauses
    # satisfied-literal count per clause, updated incrementally per flip
    nsat = []
    occurs: dict[int, list[int]] = {v: [] for v in order}
    for idx, c in enumerate(clauses):
        nsat.append(sum(1 for l in c.literals if alpha[abs(l)] == (1 if l > 0 else 0)))
        for l in c.literals:
            occurs[abs(l)].append(idx)
    for step in range(flips + 1):
        unsat = next((i for i, s in enumerate(nsat) if s == 0), None)
        if unsat is None:
            return alpha, step
        if step == flips:
            return None, flips
        lits = clauses[unsat].literals
        v = abs(lits[rng.randrange(len(lits))])
        alpha[v] = 1 - alpha[v]
        for idx in occurs[v]:
            nsat[idx] = sum(
                1 for l in clauses[idx].literals if alpha[abs(l)] == (1 if l > 0 else 0)
            )
    return None, flips


def schoening(
    formula: CnfFormula, cfg: WalkConfig, rng: random.Random
) -> WalkResult:
    """Restarted random walk; NOT_FOUND (assignment None) is not an
    unsatisfiability proof."""
    if formula.has_empty_clause():
        return WalkResult(assignment=None, restarts=0, flips=0)
    flips = cfg.flips_for(len(formula.universe))
    for restart in range(1, cfg.max_restarts + 1):
        alpha, used = _walk_once(formula, flips, rng)
        if alpha is not None:
            assert formula.evaluate(alpha), "walk returned a non-solution"
            return WalkResult(assignment=alpha, restarts=restart, flips=used)
    return WalkResult(assignment=None, restarts=cfg.max_restarts, flips=flips)
