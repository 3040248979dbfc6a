"""Independent families: construction invariants, boundaries, pool counts."""

import itertools
import random

import pytest

from densat import (
    CnfFormula,
    Clause,
    Star,
    Triangle,
    boundary_sets,
    brute_count,
    build_family_sequence,
    family_pool_count,
    max_disjoint_clauses,
    member_solutions,
    one_maximal_matching,
)
from densat.errors import ConstructionViolation, DomainError, NotTwoCnf
from densat.families import sample_family_pool
from helpers import assert_one_maximal, two_cnf_corpus


def corpus(count=80, max_n=12, seed0=11):
    return two_cnf_corpus(count, max_n=max_n, seed0=seed0)


# -- members ------------------------------------------------------------


def test_member_solutions_monotone_star_counts():
    for i in (2, 3, 4):
        clauses = tuple(Clause([1, leaf]) for leaf in range(2, 2 + i))
        star = Star(clauses=clauses, centers=(1,), monotone=True)
        assert len(member_solutions(star)) == 2**i + 1


def test_member_solutions_unit_one_star_bistar():
    unit = Star(clauses=(Clause([3]),), centers=(3,), monotone=True)
    assert member_solutions(unit) == ({3: 1},)
    one = Star(clauses=(Clause([1, 2]),), centers=(1, 2), monotone=True)
    assert len(member_solutions(one)) == 3
    bistar = Star(
        clauses=(Clause([1, 2]), Clause([-1, 3])), centers=(1,), monotone=False
    )
    assert len(member_solutions(bistar)) == 4


def test_member_solutions_triangle_three_or_four():
    four = Triangle(clauses=(Clause([1, 2]), Clause([2, 3]), Clause([3, 1])))
    assert len(member_solutions(four)) == 4
    three = Triangle(clauses=(Clause([1, 2]), Clause([2, 3]), Clause([-1, -3])))
    assert len(member_solutions(three)) == 3


def test_member_solutions_satisfy_member_clauses():
    for f in corpus(40):
        for fam in build_family_sequence(f, k=4):
            for m in fam.members:
                for alpha in member_solutions(m):
                    assert all(
                        any(alpha[abs(l)] == (l > 0) for l in c.literals)
                        for c in m.clauses
                    )


def test_star_validation_rejects_malformed():
    with pytest.raises(ConstructionViolation):
        Star(clauses=(), centers=(), monotone=True)
    with pytest.raises(ConstructionViolation):
        # clauses do not share a center
        Star(clauses=(Clause([1, 2]), Clause([3, 4])), centers=(1,), monotone=True)
    with pytest.raises(ConstructionViolation):
        # monotone flag contradicts the polarities
        Star(clauses=(Clause([1, 2]), Clause([-1, 3])), centers=(1,), monotone=True)


def test_triangle_validation():
    with pytest.raises(ConstructionViolation):
        Triangle(clauses=(Clause([1, 2]), Clause([1, 3]), Clause([1, 4])))
    with pytest.raises(ConstructionViolation):
        Triangle(clauses=(Clause([1, 2]), Clause([2, 3]), Clause([4, 5])))


# -- matching and family sequence --------------------------------------


def test_max_disjoint_clauses_is_maximal_and_disjoint():
    for f in corpus(60):
        chosen = max_disjoint_clauses(f)
        used: set[int] = set()
        for c in chosen:
            assert used.isdisjoint(c.variables)
            used |= c.variables
        for c in f.clauses:
            assert not used.isdisjoint(c.variables) or not c.literals


def test_one_maximal_matching_no_single_double_swap():
    for f in corpus(50, max_n=10, seed0=23):
        assert_one_maximal(f, one_maximal_matching(f))


def test_family_sequence_shape_and_independence():
    for f in corpus(60, seed0=31):
        fams = build_family_sequence(f, k=5)
        assert len(fams) == 6
        for level, fam in enumerate(fams):
            assert fam.level == level
            seen: set[int] = set()
            for m in fam.members:
                assert seen.isdisjoint(m.variables)
                seen |= m.variables
            if level >= 1:
                for m in fam.members:
                    if isinstance(m, Star) and m.monotone and not m.is_unit:
                        assert m.arity <= level


def test_family_sequence_guards():
    with pytest.raises(NotTwoCnf):
        build_family_sequence(CnfFormula([[1, 2, 3]]), k=3)
    with pytest.raises(DomainError):
        build_family_sequence(CnfFormula([[1, 2]]), k=1)


def test_stats_census_consistency():
    for f in corpus(40, seed0=41):
        for fam in build_family_sequence(f, k=4):
            st = fam.stats
            stars = [m for m in fam.members if isinstance(m, Star)]
            tris = [m for m in fam.members if isinstance(m, Triangle)]
            assert st.t == len(tris)
            assert st.units == sum(1 for s in stars if s.is_unit)
            assert st.q == sum(
                1 for s in stars if not s.is_unit and not s.monotone
            )
            for i in range(1, len(st.s)):
                assert st.s[i] == sum(
                    1
                    for s in stars
                    if s.monotone and not s.is_unit and s.arity == i
                )
                assert st.r(i) == sum(st.s[i:])


# -- boundary sets ------------------------------------------------------


def test_boundary_sets_shape_and_size_bound():
    for f in corpus(80, seed0=5):
        for fam in build_family_sequence(f, k=5):
            b = boundary_sets(f, fam)
            assert b.w == fam.variables
            assert b.w_prime <= b.w
            if fam.level >= 1:
                st = fam.stats
                assert len(b.w_prime) <= st.r(fam.level) + st.q


def test_boundary_variables_are_admissible_centers():
    for f in corpus(60, seed0=17):
        for fam in build_family_sequence(f, k=4):
            if fam.level == 0:
                continue
            b = boundary_sets(f, fam)
            for x in b.w_prime:
                owner = next(m for m in fam.members if x in m.variables)
                assert isinstance(owner, Star) and not owner.is_unit
                if owner.monotone:
                    assert owner.arity == fam.level and x in owner.centers
                else:
                    assert x == owner.center


# -- pool ---------------------------------------------------------------


def pool_oracle(f: CnfFormula, fam) -> int:
    """Count assignments over the full universe satisfying every member."""
    member_cnf = CnfFormula(
        list(fam.iter_clauses()), universe=f.universe
    )
    return brute_count(member_cnf)


def test_family_pool_count_exact_and_closed_form_upper_bound():
    for f in corpus(60, max_n=11, seed0=13):
        n = len(f.universe)
        for fam in build_family_sequence(f, k=4):
            exact = family_pool_count(fam, n)
            assert exact == pool_oracle(f, fam)
            st = fam.stats
            closed = float(2**n) * 2.0 ** (-st.t - st.q - st.units)
            for i in range(1, len(st.s)):
                closed *= ((2**i + 1) / 2 ** (i + 1)) ** st.s[i]
            assert exact <= closed + 1e-6


def test_sample_family_pool_hits_members_and_is_deterministic():
    f = corpus(1, seed0=77)[0]
    fam = build_family_sequence(f, k=3)[3]
    n = len(f.universe)
    a = sample_family_pool(fam, n, random.Random(9))
    b = sample_family_pool(fam, n, random.Random(9))
    assert a == b
    for _ in range(50):
        alpha = sample_family_pool(fam, n, random.Random(_))
        assert set(alpha) == set(range(1, n + 1))
        for m in fam.members:
            assert all(
                any(alpha[abs(l)] == (l > 0) for l in c.literals)
                for c in m.clauses
            )


def test_pool_count_universe_guard():
    f = CnfFormula([[1, 2]], num_vars=2)
    fam = one_maximal_matching(f)
    with pytest.raises(DomainError):
        family_pool_count(fam, 1)
