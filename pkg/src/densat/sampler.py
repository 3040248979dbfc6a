"""Exactly uniform sampling of 2-CNF solutions, parameterized by density.

Three strategies share one report format:

  * warm-up — a maximal disjoint clause set S; races rejection over the
    per-clause pool against full enumeration of the pool's partial
    assignments with (<=1)-CNF counting.
  * family rejection — draw from the independent-family pool of M_k
    until the formula is satisfied.
  * family enumeration at level l — enumerate all assignments of the
    boundary W', count each residual exactly, pick a block with
    probability proportional to its count, finish with the exact
    counting sampler.

``auto`` races rejection against enumeration for every level 1..k, so
no density estimate is ever needed; the winning arm's sample is
returned and is exactly uniform because each arm's output law is
uniform and independent of when the arm finishes.

Deterministic caches keyed by the formula make repeated draws cheap;
all work counters replay the values a cache-free run would report, so
schedules and reports are reproducible byte for byte.
"""

from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass

from .cnf import Assignment, Clause, CnfFormula
from .errors import DomainError, NotTwoCnf, Unsatisfiable
from .families import (
    IndependentFamily,
    boundary_sets,
    build_family_sequence,
    max_disjoint_clauses,
    sample_family_pool,
)
from .racing import drain, race
from .twosat import ChainSampler, count_2sat, count_leq1, sample_leq1


@dataclass(frozen=True)
class SamplerConfig:
    """k is the family depth; strategy one of auto, rejection,
    enumeration (with ell), warmup.  seed is carried for manifests; the
    operations themselves consume an explicit Random instance."""

    k: int = 7
    strategy: str = "auto"
    ell: int | None = None
    seed: int | None = None
    max_work: int | None = None

    def __post_init__(self):
        if self.strategy not in ("auto", "rejection", "enumeration", "warmup"):
            raise DomainError(f"unknown strategy {self.strategy!r}")
        if self.strategy == "enumeration":
            if self.ell is None or not 1 <= self.ell <= self.k:
                raise DomainError("enumeration needs 1 <= ell <= k")


@dataclass
class SampleReport:
    assignment: Assignment
    n: int
    strategy_won: str
    rejections: int
    counter_nodes: int
    wall_work: int
    seed_base: int | None = None
    work_by_arm: dict[str, int] | None = None
    max_step: int = 0

    def bits(self) -> str:
        return "".join(str(self.assignment[v]) for v in range(1, self.n + 1))

    def as_dict(self) -> dict:
        out = {
            "assignment": self.bits(),
            "n": self.n,
            "strategy": self.strategy_won,
            "rejections": self.rejections,
            "counter_nodes": self.counter_nodes,
            "wall_work": self.wall_work,
        }
        if self.seed_base is not None:
            out["seed_base"] = self.seed_base
        if self.work_by_arm is not None:
            out["work_by_arm"] = dict(sorted(self.work_by_arm.items()))
            out["max_step"] = self.max_step
        return out


def _dimension(formula: CnfFormula) -> int:
    n = max(formula.universe, default=0)
    if formula.universe != frozenset(range(1, n + 1)):
        raise DomainError("sampling expects the variable universe 1..n")
    return n


def _satisfies(formula: CnfFormula, alpha: Assignment) -> bool:
    return formula.evaluate(alpha) == 1


# -- deterministic per-formula caches ----------------------------------


@functools.lru_cache(maxsize=128)
def _family_seq(formula: CnfFormula, k: int):
    return tuple(build_family_sequence(formula, k))


@functools.lru_cache(maxsize=128)
def _clause_solutions(clause: Clause) -> tuple[Assignment, ...]:
    vs = sorted(clause.variables)
    out = []
    for bits in itertools.product((0, 1), repeat=len(vs)):
        alpha = dict(zip(vs, bits))
        if any(alpha[abs(l)] == (1 if l > 0 else 0) for l in clause.literals):
            out.append(alpha)
    return tuple(out)


@functools.lru_cache(maxsize=128)
def _warmup_table(formula: CnfFormula):
    """Per-alpha (<=1)-CNF counts over the disjoint-clause pool of S."""
    chosen = tuple(max_disjoint_clauses(formula))
    per_clause = [_clause_solutions(c) for c in chosen]
    entries = []
    for combo in itertools.product(*per_clause):
        alpha: Assignment = {}
        for part in combo:
            alpha.update(part)
        entries.append((alpha, count_leq1(formula.restrict(alpha))))
    total = sum(c for _, c in entries)
    return chosen, tuple(entries), total


@functools.lru_cache(maxsize=128)
def _enum_table(formula: CnfFormula, ell: int, k: int):
    """Counts of every W'-block at level ell, in lexicographic order."""
    fams = _family_seq(formula, k)
    bounds = boundary_sets(formula, fams[ell])
    wp = tuple(sorted(bounds.w_prime))
    entries = []
    for bits in itertools.product((0, 1), repeat=len(wp)):
        res = count_2sat(formula.restrict(dict(zip(wp, bits))))
        entries.append((res.count, res.nodes_expanded))
    total = sum(c for c, _ in entries)
    return wp, tuple(entries), total


@functools.lru_cache(maxsize=512)
def _chain_for(formula: CnfFormula) -> ChainSampler:
    return ChainSampler(formula)


# -- strategy cores (racing arms) --------------------------------------


def _rejection_arm(formula, family, n, rng):
    work = 0
    rejections = 0
    while True:
        alpha = sample_family_pool(family, n, rng)
        work += 1
        if _satisfies(formula, alpha):
            return (
                {"assignment": alpha, "rejections": rejections, "counter_nodes": 0},
                work,
            )
        rejections += 1
        yield work


def _warmup_rejection_arm(formula, chosen, n, rng):
    locals_ = [_clause_solutions(c) for c in chosen]
    if any(not s for s in locals_):
        raise Unsatisfiable("empty clause present")
    covered = {v for c in chosen for v in c.variables}
    free = sorted(formula.universe - covered)
    work = 0
    rejections = 0
    while True:
        alpha: Assignment = {}
        for sols in locals_:
            alpha.update(sols[rng.randrange(len(sols))])
        for v in free:
            alpha[v] = rng.randrange(2)
        work += 1
        if _satisfies(formula, alpha):
            return (
                {"assignment": alpha, "rejections": rejections, "counter_nodes": 0},
                work,
            )
        rejections += 1
        yield work


def _warmup_enum_arm(formula, n, rng):
    _, entries, total = _warmup_table(formula)
    work = 0
    for _ in entries:
        work += 1
        yield work
    if total == 0:
        raise Unsatisfiable("pool enumeration found no satisfying assignment")
    r = rng.randrange(total)
    for alpha, count in entries:
        if r < count:
            beta = sample_leq1(formula.restrict(alpha), rng)
            full = {**alpha, **beta}
            return (
                {"assignment": full, "rejections": 0, "counter_nodes": 0},
                work,
            )
        r -= count


def _enum_arm(formula, ell, k, n, rng):
    wp, entries, total = _enum_table(formula, ell, k)
    work = 0
    for _, nodes in entries:
        work += nodes
        yield work
    if total == 0:
        raise Unsatisfiable("boundary enumeration found no satisfying assignment")
    r = rng.randrange(total)
    for bits, (count, _) in zip(itertools.product((0, 1), repeat=len(wp)), entries):
        if r < count:
            alpha = dict(zip(wp, bits))
            chain = _chain_for(formula.restrict(alpha))
            before = chain.work
            beta = chain.draw(rng)
            work += chain.work - before
            full = {**alpha, **beta}
            return (
                {"assignment": full, "rejections": 0, "counter_nodes": work},
                work,
            )
        r -= count


def _finish(formula, n, label, value, work, **extra) -> SampleReport:
    report = SampleReport(
        assignment=value["assignment"],
        n=n,
        strategy_won=label,
        rejections=value["rejections"],
        counter_nodes=value["counter_nodes"],
        wall_work=work,
        **extra,
    )
    assert _satisfies(formula, report.assignment), "sampler produced a non-solution"
    return report


# -- public operations -------------------------------------------------


def warmup_sample(
    formula: CnfFormula, rng: random.Random, max_work: int | None = None
) -> SampleReport:
    """Uniform sample via the disjoint-clause pool race.

    Work units: one rejection draw, or one enumerated pool assignment.
    """
    _require_two(formula)
    n = _dimension(formula)
    chosen, _, _ = _warmup_table(formula)
    base = rng.getrandbits(63)
    arms = [
        ("warmup-rejection", _warmup_rejection_arm(formula, chosen, n, _arm_rng(base, "warmup-rejection"))),
        ("warmup-enumeration", _warmup_enum_arm(formula, n, _arm_rng(base, "warmup-enumeration"))),
    ]
    outcome = race(arms, max_work=max_work)
    return _finish(
        formula,
        n,
        outcome.winner,
        outcome.value,
        outcome.total_work,
        seed_base=base,
        work_by_arm=outcome.work_by_arm,
        max_step=outcome.max_step,
    )


def family_rejection_sample(
    formula: CnfFormula,
    family: IndependentFamily,
    rng: random.Random,
    max_work: int | None = None,
) -> SampleReport:
    """Pool rejection against one family; loops while unsatisfied.

    Expected rejections are pool/|sat(F)| - 1, so satisfiability is the
    caller's promise; set max_work to bound the search.
    """
    _require_two(formula)
    n = _dimension(formula)
    value, work = drain(
        _rejection_arm(formula, family, n, rng), max_work=max_work
    )
    return _finish(formula, n, "rejection", value, work)


def family_enumeration_sample(
    formula: CnfFormula,
    ell: int,
    rng: random.Random,
    k: int = 7,
    max_work: int | None = None,
) -> SampleReport:
    """Boundary enumeration at one level; certifies unsatisfiability."""
    _require_two(formula)
    n = _dimension(formula)
    if not 1 <= ell <= k:
        raise DomainError("enumeration level must satisfy 1 <= ell <= k")
    value, work = drain(_enum_arm(formula, ell, k, n, rng), max_work=max_work)
    return _finish(formula, n, f"enum-l{ell}", value, work)


def sample_solution(
    formula: CnfFormula, config: SamplerConfig, rng: random.Random
) -> SampleReport:
    """One uniform satisfying assignment under the configured strategy.

    ``auto`` races family rejection against enumeration at every level
    1..k with independent per-arm random streams derived from one base
    seed drawn from ``rng`` (recorded in the report for replay).
    """
    _require_two(formula)
    n = _dimension(formula)
    if config.strategy == "warmup":
        return warmup_sample(formula, rng, max_work=config.max_work)
    if config.strategy == "rejection":
        family = _family_seq(formula, config.k)[config.k]
        return family_rejection_sample(formula, family, rng, max_work=config.max_work)
    if config.strategy == "enumeration":
        return family_enumeration_sample(
            formula, config.ell, rng, k=config.k, max_work=config.max_work
        )
    family = _family_seq(formula, config.k)[config.k]
    base = rng.getrandbits(63)
    arms = [
        (
            "rejection",
            _rejection_arm(formula, family, n, _arm_rng(base, "rejection")),
        )
    ]
    for ell in range(1, config.k + 1):
        label = f"enum-l{ell}"
        arms.append(
            (label, _enum_arm(formula, ell, config.k, n, _arm_rng(base, label)))
        )
    outcome = race(arms, max_work=config.max_work)
    value = outcome.value
    rejections = outcome.work_by_arm["rejection"]
    if outcome.winner == "rejection":
        rejections = value["rejections"]
    counter_nodes = sum(
        w for label, w in outcome.work_by_arm.items() if label.startswith("enum")
    )
    return SampleReport(
        assignment=value["assignment"],
        n=n,
        strategy_won=outcome.winner,
        rejections=rejections,
        counter_nodes=counter_nodes,
        wall_work=outcome.total_work,
        seed_base=base,
        work_by_arm=outcome.work_by_arm,
        max_step=outcome.max_step,
    )


def _arm_rng(base: int, label: str) -> random.Random:
    return random.Random(f"{base}:{label}")


def _require_two(formula: CnfFormula) -> None:
    if formula.max_width() > 2:
        raise NotTwoCnf(f"clause width {formula.max_width()} exceeds 2")
