"""Sampling strategies: correctness, budgets, replayability."""

import random

import pytest

from densat import (
    CnfFormula,
    SamplerConfig,
    brute_count,
    brute_enumerate,
    build_family_sequence,
    count_2sat,
    boundary_sets,
    family_enumeration_sample,
    family_rejection_sample,
    sample_solution,
    warmup_sample,
)
from densat.errors import (
    DomainError,
    NotTwoCnf,
    Unsatisfiable,
    WorkBudgetExceeded,
)
from helpers import ksat, two_cnf_corpus


def sat_corpus(count=25, max_n=10, seed0=19):
    out = []
    for f in two_cnf_corpus(count * 2, max_n=max_n, seed0=seed0):
        if brute_count(f) > 0:
            out.append(f)
        if len(out) == count:
            break
    return out


def test_config_validation():
    with pytest.raises(DomainError):
        SamplerConfig(strategy="nope")
    with pytest.raises(DomainError):
        SamplerConfig(strategy="enumeration")
    with pytest.raises(DomainError):
        SamplerConfig(strategy="enumeration", ell=9, k=7)
    SamplerConfig(strategy="enumeration", ell=2)


def test_universe_must_be_contiguous():
    gapped = CnfFormula([[2, 5]], universe=[2, 5])
    with pytest.raises(DomainError):
        sample_solution(gapped, SamplerConfig(), random.Random(0))


def test_width_guard():
    with pytest.raises(NotTwoCnf):
        warmup_sample(CnfFormula([[1, 2, 3]]), random.Random(0))


def test_every_strategy_returns_a_satisfying_assignment():
    for f in sat_corpus(12):
        n = len(f.universe)
        fams = build_family_sequence(f, k=4)
        rng = random.Random(1)
        reports = [
            warmup_sample(f, rng),
            family_rejection_sample(f, fams[4], rng),
            family_enumeration_sample(f, 1, rng, k=4),
            family_enumeration_sample(f, 3, rng, k=4),
            sample_solution(f, SamplerConfig(k=4), rng),
            sample_solution(f, SamplerConfig(k=4, strategy="warmup"), rng),
        ]
        for rep in reports:
            assert rep.n == n
            assert f.evaluate(rep.assignment) == 1
            assert len(rep.bits()) == n
            assert rep.wall_work >= 1


def test_unsatisfiable_is_certified_by_enumeration():
    f = CnfFormula([[1, 2], [1, -2], [-1, 2], [-1, -2]])
    with pytest.raises(Unsatisfiable):
        family_enumeration_sample(f, 1, random.Random(0))
    with pytest.raises(Unsatisfiable):
        warmup_sample(f, random.Random(0))
    with pytest.raises(Unsatisfiable):
        sample_solution(f, SamplerConfig(), random.Random(0))


def test_work_budget_is_enforced():
    # dense instance with few solutions: rejection alone must overrun
    f = ksat(n=10, m=28, seed=42, planted=True)
    fam = build_family_sequence(f, k=7)[7]
    with pytest.raises(WorkBudgetExceeded):
        family_rejection_sample(f, fam, random.Random(0), max_work=1)


def test_racer_report_is_replayable_from_seed_base():
    """work_by_arm must be reproducible by rerunning each arm standalone
    with the per-arm stream derived from the recorded base seed."""
    for f in sat_corpus(8, seed0=29):
        rep = sample_solution(f, SamplerConfig(k=4), random.Random(7))
        assert rep.seed_base is not None
        if rep.strategy_won == "rejection":
            fam = build_family_sequence(f, k=4)[4]
            again = family_rejection_sample(
                f, fam, random.Random(f"{rep.seed_base}:rejection")
            )
        else:
            ell = int(rep.strategy_won.removeprefix("enum-l"))
            again = family_enumeration_sample(
                f, ell, random.Random(f"{rep.seed_base}:{rep.strategy_won}"), k=4
            )
        assert again.assignment == rep.assignment
        assert again.wall_work == rep.work_by_arm[rep.strategy_won]


def test_enumeration_block_counts_partition_the_solution_set():
    for f in sat_corpus(10, seed0=37):
        total_solutions = brute_count(f)
        fams = build_family_sequence(f, k=4)
        for ell in (1, 2, 3):
            bounds = boundary_sets(f, fams[ell])
            wp = sorted(bounds.w_prime)
            total = 0
            for bits in _bit_patterns(len(wp)):
                total += count_2sat(f.restrict(dict(zip(wp, bits)))).count
            assert total == total_solutions


def _bit_patterns(width):
    for x in range(1 << width):
        yield tuple((x >> (width - 1 - i)) & 1 for i in range(width))


def test_rejection_frequencies_cover_all_solutions():
    f = ksat(n=8, m=10, seed=13, planted=True)
    sols = set(brute_enumerate(f))
    fam = build_family_sequence(f, k=5)[5]
    order = sorted(f.universe)
    rng = random.Random(3)
    seen = set()
    for _ in range(1500):
        rep = family_rejection_sample(f, fam, rng)
        idx = 0
        for v in order:
            idx = (idx << 1) | rep.assignment[v]
        seen.add(idx)
    assert seen == sols


def test_sampling_is_deterministic_given_seed():
    f = ksat(n=9, m=12, seed=8, planted=True)
    a = sample_solution(f, SamplerConfig(), random.Random(123))
    b = sample_solution(f, SamplerConfig(), random.Random(123))
    assert a.assignment == b.assignment
    assert a.work_by_arm == b.work_by_arm
    assert a.seed_base == b.seed_base
