"""Ground-truth brute force and seeded instance generation.

Everything here is deliberately simple: exhaustive enumeration for counts
and uniform sampling, plus a reproducible random k-CNF generator.  The
fast solvers and samplers are tested against this module, so it must stay
independent of them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .cnf import Assignment, Clause, CnfFormula
from .errors import TooLarge, Unsatisfiable

_CHUNK_BITS = 20


def _sat_flags_chunk(formula: CnfFormula, lo: int, hi: int) -> np.ndarray:
    """Boolean satisfaction flags for assignment indices lo..hi-1.

    Index bits follow sorted variable order with the first variable most
    significant, so ascending index equals lexicographic assignment order.
    """
    order = sorted(formula.universe)
    n = len(order)
    idx = np.arange(lo, hi, dtype=np.int64)
    flags = np.ones(hi - lo, dtype=bool)
    shift_of = {v: n - 1 - i for i, v in enumerate(order)}
    for clause in formula.clauses:
        csat = np.zeros(hi - lo, dtype=bool)
        for lit in clause.literals:
            bit = (idx >> shift_of[abs(lit)]) & 1
            csat |= bit == 1 if lit > 0 else bit == 0
        flags &= csat
    return flags


def brute_count(formula: CnfFormula, limit: int = 30) -> int:
    """Exact |sat(F)| by enumerating all 2^n assignments.

    Raises TooLarge when the universe exceeds ``limit`` variables.
    """
    n = formula.num_vars
    if n > limit:
        raise TooLarge(f"n={n} exceeds brute-force limit {limit}")
    if formula.has_empty_clause():
        return 0
    total = 0
    for lo in range(0, 1 << n, 1 << _CHUNK_BITS):
        hi = min(lo + (1 << _CHUNK_BITS), 1 << n)
        total += int(_sat_flags_chunk(formula, lo, hi).sum())
    return total


def brute_enumerate(formula: CnfFormula, limit: int = 24) -> list[int]:
    """All satisfying assignment indices in lexicographic order."""
    n = formula.num_vars
    if n > limit:
        raise TooLarge(f"n={n} exceeds enumeration limit {limit}")
    out: list[int] = []
    if formula.has_empty_clause():
        return out
    for lo in range(0, 1 << n, 1 << _CHUNK_BITS):
        hi = min(lo + (1 << _CHUNK_BITS), 1 << n)
        flags = _sat_flags_chunk(formula, lo, hi)
        out.extend((np.nonzero(flags)[0] + lo).tolist())
    return out


def index_to_assignment(formula: CnfFormula, index: int) -> Assignment:
    """Decode a lexicographic assignment index to a variable->bit dict."""
    order = sorted(formula.universe)
    n = len(order)
    return {v: (index >> (n - 1 - i)) & 1 for i, v in enumerate(order)}


def brute_sample(formula: CnfFormula, rng: random.Random, limit: int = 24) -> Assignment:
    """Uniform satisfying assignment via exhaustive enumeration."""
    sat = brute_enumerate(formula, limit=limit)
    if not sat:
        raise Unsatisfiable("formula has no satisfying assignment")
    return index_to_assignment(formula, sat[rng.randrange(len(sat))])


@dataclass(frozen=True)
class InstanceSpec:
    """Reproducible description of one random k-CNF instance."""

    n: int
    m: int
    k: int
    seed: int
    planted: bool = False


def gen_random_ksat(spec: InstanceSpec) -> CnfFormula:
    """Seeded random k-CNF over variables 1..n.

    Each clause draws k distinct variables and independent polarities.
    With ``planted`` a hidden assignment is drawn first and each clause
    that would falsify it has one literal flipped, so the instance is
    guaranteed satisfiable.  Identical specs yield identical formulas.
    """
    if spec.k < 1 or spec.k > spec.n:
        raise ValueError(f"need 1 <= k <= n, got k={spec.k}, n={spec.n}")
    rng = random.Random(f"ksat:{spec.n}:{spec.m}:{spec.k}:{spec.seed}:{int(spec.planted)}")
    hidden = None
    if spec.planted:
        hidden = {v: rng.randrange(2) for v in range(1, spec.n + 1)}
    clauses = []
    for _ in range(spec.m):
        vs = rng.sample(range(1, spec.n + 1), spec.k)
        lits = [v if rng.randrange(2) else -v for v in vs]
        if hidden is not None and not any(
            (hidden[abs(l)] == 1) == (l > 0) for l in lits
        ):
            j = rng.randrange(spec.k)
            lits[j] = -lits[j]
        clauses.append(Clause(lits))
    return CnfFormula(clauses, num_vars=spec.n)
