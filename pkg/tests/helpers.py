"""Shared corpus builders and the acceptance report log."""

from __future__ import annotations

import itertools
import random
from contextlib import contextmanager

from densat import CnfFormula, InstanceSpec, gen_random_ksat

# (criterion number, title, passed, detail) — printed in the terminal summary
ACCEPTANCE_LOG: list[tuple[int, str, bool, str]] = []


@contextmanager
def criterion(num: int, title: str):
    """Record one acceptance criterion outcome; re-raises on failure."""
    info: dict = {"detail": ""}
    try:
        yield info
    except BaseException as exc:
        ACCEPTANCE_LOG.append(
            (num, title, False, info["detail"] or f"{type(exc).__name__}: {exc}")
        )
        raise
    ACCEPTANCE_LOG.append((num, title, True, info["detail"]))


def ksat(n: int, m: int, seed: int, k: int = 2, planted: bool = False) -> CnfFormula:
    return gen_random_ksat(InstanceSpec(n=n, m=m, k=k, seed=seed, planted=planted))


def assert_one_maximal(f, fam):
    """No 1-star member is tradable for two disjoint width-2 clauses.

    Width-1 members are degenerate (their variables are fixed by unit
    reduction before any residual counting), so trades — like the greedy
    construction's augmenting passes — range over width-2 clauses only.
    """
    covered = fam.variables
    for i, member in enumerate(fam.members):
        if len(member.clauses[0].literals) != 2 or len(member.clauses) != 1:
            continue
        outside = covered - member.variables
        candidates = [
            c
            for c in f.clauses
            if len(c.literals) == 2 and outside.isdisjoint(c.variables)
        ]
        for c1, c2 in itertools.combinations(candidates, 2):
            assert not c1.variables.isdisjoint(c2.variables), (
                f"member {i} swappable for {c1.literals}, {c2.literals}"
            )


def with_units(formula: CnfFormula, count: int, seed: int) -> CnfFormula:
    """Append ``count`` random unit clauses, keeping the universe."""
    rng = random.Random(f"units:{seed}")
    vs = sorted(formula.universe)
    extra = []
    for _ in range(count):
        v = rng.choice(vs)
        extra.append([v if rng.random() < 0.5 else -v])
    return CnfFormula(list(formula.clauses) + extra, universe=formula.universe)


def two_cnf_corpus(
    count: int,
    max_n: int,
    seed0: int,
    min_n: int = 2,
    unit_every: int = 5,
    planted_every: int = 3,
) -> list[CnfFormula]:
    """Mixed-density (<=2)-CNF instances, deterministic in seed0.

    Every ``planted_every``-th instance is satisfiable by construction and
    every ``unit_every``-th carries extra unit clauses, so the corpus mixes
    sat/unsat, dense/sparse, and unit-bearing formulas.
    """
    rng = random.Random(f"corpus2:{seed0}")
    out = []
    for i in range(count):
        n = rng.randrange(min_n, max_n + 1)
        m = rng.randrange(1, 3 * n + 1)
        f = ksat(n, m, seed0 * 10_000 + i, k=2, planted=(i % planted_every == 0))
        if i % unit_every == 0:
            f = with_units(f, 1 + rng.randrange(2), seed0 * 10_000 + i)
        out.append(f)
    return out


def three_cnf_corpus(
    count: int, max_n: int, seed0: int, min_n: int = 3, planted_every: int = 3
) -> list[CnfFormula]:
    """Mixed-density 3-CNF instances, deterministic in seed0."""
    rng = random.Random(f"corpus3:{seed0}")
    out = []
    for i in range(count):
        n = rng.randrange(min_n, max_n + 1)
        m = rng.randrange(1, 5 * n + 1)
        out.append(
            ksat(n, m, seed0 * 10_000 + i, k=3, planted=(i % planted_every == 0))
        )
    return out
