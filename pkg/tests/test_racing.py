"""Cap-doubling race scheduler on synthetic arms."""

import pytest

from densat.errors import Unsatisfiable, WorkBudgetExceeded
from densat.racing import drain, race


def finishing_arm(cost, value):
    def gen():
        work = 0
        while work + 1 < cost:
            work += 1
            yield work
        return (value, cost)

    return gen()


def test_single_arm_wins_trivially():
    out = race([("only", finishing_arm(3, "v"))])
    assert out.winner == "only" and out.value == "v"
    assert out.winner_work == 3 and out.overhead == 0


def test_cheapest_arm_wins_and_bound_holds():
    for costs in [(5, 50), (50, 5), (17, 16, 40), (1, 1, 1), (64, 2, 128)]:
        arms = [
            (f"a{i}", finishing_arm(c, f"v{i}")) for i, c in enumerate(costs)
        ]
        out = race(arms)
        cheapest = min(costs)
        won = costs[int(out.winner[1:])]
        # cap doubling may let a slightly pricier arm finish first, but
        # never past the doubling envelope of the cheapest
        assert won <= 2 * cheapest
        assert out.winner_work <= 2 * cheapest + out.max_step
        assert out.total_work == sum(out.work_by_arm.values())
        assert out.overhead == out.total_work - out.winner_work


def test_tie_breaks_by_arm_order():
    out = race([("first", finishing_arm(4, "x")), ("second", finishing_arm(4, "y"))])
    assert out.winner == "first"


def test_round_budgets_double():
    # an arm that needs 9 units cannot finish before the cap reaches 16
    out = race([("slow", finishing_arm(9, "s")), ("slower", finishing_arm(200, "t"))])
    assert out.winner == "slow"
    assert out.rounds >= 4
    # loser never runs past the winner's final cap by more than one step
    assert out.work_by_arm["slower"] <= 16 + out.max_step


def test_work_budget_aborts_the_race():
    arms = [("a", finishing_arm(1000, None)), ("b", finishing_arm(1000, None))]
    with pytest.raises(WorkBudgetExceeded):
        race(arms, max_work=50)


def test_exceptions_propagate():
    def bad():
        yield 1
        raise Unsatisfiable("no way")

    with pytest.raises(Unsatisfiable):
        race([("ok", finishing_arm(100, "v")), ("bad", bad())])


def test_drain_runs_one_arm_to_completion():
    value, work = drain(finishing_arm(7, "z"))
    assert value == "z" and work == 7
    with pytest.raises(WorkBudgetExceeded):
        drain(finishing_arm(100, "z"), max_work=10)
