"""Deterministic cooperative racing of work-metered strategies.

An arm is a generator that yields its cumulative work (a nondecreasing
int) after each atomic step and finally returns ``(value, final_work)``.
The scheduler interleaves arms in a fixed order under a per-arm budget
that doubles every round, so the first finisher's own work is at most
``2 * min_a(work_a) + max_step`` where ``max_step`` is the largest
atomic increment observed.  Everything is sequential and replayable:
identical arms and budgets produce identical outcomes.

Arms may raise Unsatisfiable to certify there is nothing to find; the
race propagates it immediately.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import WorkBudgetExceeded


@dataclass
class RaceOutcome:
    winner: str
    value: object
    work_by_arm: dict[str, int]
    rounds: int
    max_step: int

    @property
    def winner_work(self) -> int:
        return self.work_by_arm[self.winner]

    @property
    def total_work(self) -> int:
        return sum(self.work_by_arm.values())

    @property
    def overhead(self) -> int:
        """Work spent by losing arms — the cost of not knowing the density."""
        return self.total_work - self.winner_work


def race(arms: list[tuple[str, object]], max_work: int | None = None) -> RaceOutcome:
    """Run arms round-robin with doubling budgets until one returns.

    ``arms`` is an ordered list of (label, generator); order breaks ties
    when several arms could finish in the same round.
    """
    cum = {label: 0 for label, _ in arms}
    max_step = 0
    rounds = 0
    cap = 1
    while True:
        rounds += 1
        for label, gen in arms:
            while cum[label] < cap:
                try:
                    w = next(gen)
                except StopIteration as stop:
                    value, final = stop.value
                    max_step = max(max_step, final - cum[label])
                    cum[label] = final
                    return RaceOutcome(
                        winner=label,
                        value=value,
                        work_by_arm=cum,
                        rounds=rounds,
                        max_step=max_step,
                    )
                max_step = max(max_step, w - cum[label])
                cum[label] = w
                if max_work is not None and sum(cum.values()) > max_work:
                    raise WorkBudgetExceeded(
                        f"race exceeded work budget {max_work}"
                    )
        cap *= 2


def drain(gen, max_work: int | None = None) -> tuple[object, int]:
    """Run a single arm to completion, enforcing an optional budget."""
    work = 0
    while True:
        try:
            work = next(gen)
        except StopIteration as stop:
            return stop.value
        if max_work is not None and work > max_work:
            raise WorkBudgetExceeded(f"work budget {max_work} exceeded")
