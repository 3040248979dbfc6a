"""Breadth-first branching search: floors, autarkness, stopping bounds."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from densat import (
    BASIC_RULE,
    MS_RULE,
    CnfFormula,
    bfs_solve,
    branching_number,
    brute_count,
    floor_census_rows,
    is_autark,
    ms_branch,
    stopping_bound,
)
from densat.errors import (
    DomainError,
    EmptyClausePresent,
    LambdaOutOfRange,
    NodeBudgetExceeded,
)
from helpers import three_cnf_corpus


def test_ms_branch_shapes():
    f = CnfFormula([[4, 5], [-4, 1], [-5, 2], [1, 2, 3]])
    betas = ms_branch(f)
    # shortest clause first: (4 v 5) yields beta_1={4:1}, beta_2={4:0,5:1};
    # neither is autark: each leaves a touched clause unsatisfied
    assert betas == [{4: 1}, {4: 0, 5: 1}]


def test_ms_branch_autark_collapses_to_singleton():
    # beta_1 = {1:1} touches every clause and satisfies them all
    f = CnfFormula([[1, 2], [1, 3]])
    assert ms_branch(f) == [{1: 1}]


def test_ms_branch_guards():
    with pytest.raises(DomainError):
        ms_branch(CnfFormula([]))
    with pytest.raises(EmptyClausePresent):
        ms_branch(CnfFormula([[1, 2]]).restrict({1: 0, 2: 0}))


def test_is_autark():
    f = CnfFormula([[1, 2], [1, 3], [-2, 4]])
    assert is_autark(f, {1: 1})  # touches first two clauses, satisfies both
    assert not is_autark(f, {2: 1})  # touches (-2,4) without satisfying it
    assert is_autark(f, {4: 1})


def test_basic_branch_has_no_autark_shortcut():
    f = CnfFormula([[1, 2], [1, 3]])
    from densat.detsearch import basic_branch

    betas = basic_branch(f)
    assert betas == [{1: 1}, {1: 0, 2: 1}]


def test_verdicts_match_oracle_and_floor_caps_hold():
    for f in three_cnf_corpus(120, max_n=12, seed0=3):
        result = bfs_solve(f)
        expected_sat = brute_count(f) > 0
        assert (result.status == "sat") == expected_sat
        if expected_sat:
            assert f.evaluate(result.assignment) == 1
            assert set(result.assignment) == f.universe
        for floor, size, cap in floor_census_rows(result):
            assert size <= cap + 1e-9, (floor, size, cap)


def test_rules_agree_on_verdicts():
    for f in three_cnf_corpus(60, max_n=10, seed0=9):
        assert (
            bfs_solve(f, rule=MS_RULE).status
            == bfs_solve(f, rule=BASIC_RULE).status
        )


def test_lambda_run_never_exceeds_nominal_weights():
    """Observed branching vectors must be credited consistently: the
    per-run growth rate is the branching number of the worst vector
    actually used, which the result must expose."""
    for f in three_cnf_corpus(40, max_n=10, seed0=15):
        result = bfs_solve(f)
        if result.vectors_seen:
            worst = max(branching_number(v) for v in result.vectors_seen)
            assert math.isclose(result.lambda_run, worst, rel_tol=1e-12)
        assert 1.0 <= result.lambda_run < 2.0 or result.nodes_expanded <= 1


def test_solution_floor_respects_density_stopping_bound():
    for f in three_cnf_corpus(80, max_n=12, seed0=21):
        count = brute_count(f)
        if count == 0:
            continue
        eps = count / 2 ** len(f.universe)
        result = bfs_solve(f, epsilon=eps)
        assert result.status == "sat"
        assert result.promise_ok is True
        assert result.solution_floor <= result.floor_bound + 1e-9


def test_stopping_bound_values_and_guards():
    # lambda=1.5, eps=1: c = 2/(2-1.5) = 4, bound = log_{0.75}(1/4) > 0
    b = stopping_bound(1.5, 1.0)
    assert math.isclose(b, math.log(1 / 4) / math.log(0.75), rel_tol=1e-12)
    assert stopping_bound(1.0, 1.0) >= 0
    with pytest.raises(LambdaOutOfRange):
        stopping_bound(2.0, 0.5)
    with pytest.raises(LambdaOutOfRange):
        stopping_bound(0.9, 0.5)
    with pytest.raises(DomainError):
        stopping_bound(1.5, 0.0)
    with pytest.raises(DomainError):
        stopping_bound(1.5, 1.5)


@settings(max_examples=60, deadline=None)
@given(
    st.floats(1.05, 1.95),
    st.floats(1e-9, 1.0, exclude_min=False),
    st.floats(0.1, 0.999),
)
def test_stopping_bound_grows_as_density_shrinks(lam, eps, shrink):
    assert stopping_bound(lam, eps * shrink) >= stopping_bound(lam, eps)


def test_node_budget():
    f = three_cnf_corpus(1, max_n=14, seed0=33)[0]
    with pytest.raises(NodeBudgetExceeded):
        bfs_solve(f, max_nodes=2)


def test_dedup_only_prunes():
    for f in three_cnf_corpus(30, max_n=9, seed0=27):
        plain = bfs_solve(f)
        dedup = bfs_solve(f, dedup=True)
        assert plain.status == dedup.status
        assert dedup.nodes_expanded <= plain.nodes_expanded


def test_result_serialization():
    f = three_cnf_corpus(1, max_n=8, seed0=1)[0]
    d = bfs_solve(f, epsilon=0.5).as_dict()
    for key in ("status", "solution_floor", "nodes_expanded", "lambda_run"):
        assert key in d
