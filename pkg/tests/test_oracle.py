"""Brute-force oracle and the seeded instance generator."""

import itertools
import random

import pytest

from densat import (
    CnfFormula,
    InstanceSpec,
    brute_count,
    brute_enumerate,
    brute_sample,
    gen_random_ksat,
)
from densat.errors import TooLarge
from densat.oracle import index_to_assignment


def slow_count(formula: CnfFormula) -> int:
    """Independent pure-Python model counter."""
    vs = sorted(formula.universe)
    total = 0
    for bits in itertools.product((0, 1), repeat=len(vs)):
        total += formula.evaluate(dict(zip(vs, bits)))
    return total


@pytest.mark.parametrize(
    "clauses,n,expected",
    [
        ([], 3, 8),
        ([[1, 2]], 2, 3),
        ([[1], [-1]], 1, 0),
        ([[1, 2], [-1, -2]], 2, 2),
        ([[1, 2, 3]], 3, 7),
    ],
)
def test_brute_count_knowns(clauses, n, expected):
    assert brute_count(CnfFormula(clauses, num_vars=n)) == expected


def test_brute_count_matches_slow_reference():
    rng = random.Random(0)
    for trial in range(40):
        n = rng.randrange(2, 9)
        spec = InstanceSpec(n=n, m=rng.randrange(1, 3 * n + 1), k=2, seed=trial)
        f = gen_random_ksat(spec)
        assert brute_count(f) == slow_count(f)


def test_brute_count_gapped_universe():
    f = CnfFormula([[2, -7]], universe=[2, 5, 7])
    assert brute_count(f) == slow_count(f) == 6


def test_brute_limit_guard():
    with pytest.raises(TooLarge):
        brute_count(CnfFormula([], num_vars=31))
    with pytest.raises(TooLarge):
        brute_enumerate(CnfFormula([], num_vars=25))


def test_enumerate_decodes_to_satisfying_assignments():
    f = gen_random_ksat(InstanceSpec(n=7, m=10, k=2, seed=3))
    idxs = brute_enumerate(f)
    assert len(idxs) == brute_count(f)
    assert idxs == sorted(idxs)
    for idx in idxs:
        assert f.evaluate(index_to_assignment(f, idx)) == 1


def test_brute_sample_is_satisfying_and_deterministic():
    f = gen_random_ksat(InstanceSpec(n=6, m=8, k=2, seed=11, planted=True))
    a = brute_sample(f, random.Random(5))
    b = brute_sample(f, random.Random(5))
    assert a == b and f.evaluate(a) == 1


def test_generator_is_deterministic_and_respects_spec():
    spec = InstanceSpec(n=9, m=15, k=3, seed=21)
    f, g = gen_random_ksat(spec), gen_random_ksat(spec)
    assert f == g
    assert f.universe == frozenset(range(1, 10))
    assert all(len(c) == 3 for c in f.clauses)
    assert gen_random_ksat(InstanceSpec(n=9, m=15, k=3, seed=22)) != f


def test_planted_instances_are_satisfiable():
    for seed in range(30):
        f = gen_random_ksat(InstanceSpec(n=8, m=20, k=2, seed=seed, planted=True))
        assert brute_count(f) > 0
        g = gen_random_ksat(InstanceSpec(n=8, m=30, k=3, seed=seed, planted=True))
        assert brute_count(g) > 0
