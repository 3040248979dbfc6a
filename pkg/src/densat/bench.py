"""Scaling sanity bench over a planted-density 2-CNF corpus.

Not an exponent certification: desk-scale instances only show that
family-rejection work tracks the measured density (mean work grows as
epsilon falls) and that the racer's winner never pays more than twice
the best single strategy plus one dovetail step.  Emits a CSV of work
counters vs. oracle-measured epsilon and renders a PNG figure next to
it.
"""

from __future__ import annotations

import csv
import random
import statistics
from dataclasses import dataclass, field
from pathlib import Path

from .oracle import InstanceSpec, brute_count, gen_random_ksat
from .sampler import (
    SamplerConfig,
    _arm_rng,
    _family_seq,
    family_enumeration_sample,
    family_rejection_sample,
    sample_solution,
)

DEFAULT_M_LADDER = (6, 12, 18, 24, 30, 36)


@dataclass
class BenchReport:
    rows: list[dict]
    buckets: list[dict]
    monotone: bool
    bound_ok_all: bool
    csv_path: str
    png_path: str | None

    def summary(self) -> dict:
        return {
            "instances": len(self.rows),
            "buckets": self.buckets,
            "rejection_work_monotone": self.monotone,
            "racer_bound_ok_all": self.bound_ok_all,
            "csv": self.csv_path,
            "png": self.png_path,
        }


def _measure_instance(spec: InstanceSpec, k: int, draws: int) -> dict:
    formula = gen_random_ksat(spec)
    sat = brute_count(formula)
    eps = sat / 2**spec.n
    family = _family_seq(formula, k)[k]

    # mean rejection work over several draws; single draws are geometric
    rng = random.Random(f"bench-mono:{spec.seed}:{spec.m}")
    mean_rej = statistics.fmean(
        family_rejection_sample(formula, family, rng).wall_work for _ in range(draws)
    )

    # one racer run, then each arm replayed standalone on its own stream
    racer = sample_solution(
        formula, SamplerConfig(strategy="auto", k=k),
        random.Random(f"bench-race:{spec.seed}:{spec.m}"),
    )
    singles = {
        "rejection": family_rejection_sample(
            formula, family, _arm_rng(racer.seed_base, "rejection")
        ).wall_work
    }
    for ell in range(1, k + 1):
        label = f"enum-l{ell}"
        singles[label] = family_enumeration_sample(
            formula, ell, _arm_rng(racer.seed_base, label), k=k
        ).wall_work
    winner_work = racer.work_by_arm[racer.strategy_won]
    assert singles[racer.strategy_won] == winner_work, "replay diverged from race"
    min_single = min(singles.values())
    bound_ok = winner_work <= 2 * min_single + racer.max_step

    row = {
        "n": spec.n,
        "m": spec.m,
        "seed": spec.seed,
        "sat_count": sat,
        "epsilon": eps,
        "rejection_mean_work": mean_rej,
        "winner": racer.strategy_won,
        "winner_work": winner_work,
        "min_single_work": min_single,
        "total_work": racer.wall_work,
        "overhead": racer.wall_work - winner_work,
        "max_step": racer.max_step,
        "bound_ok": bound_ok,
    }
    for label in sorted(singles):
        row[f"work_{label.replace('-', '_')}"] = singles[label]
    return row


def run_bench(
    out_dir: str | Path,
    n: int = 12,
    m_ladder: tuple[int, ...] = DEFAULT_M_LADDER,
    seeds_per_m: int = 4,
    k: int = 7,
    draws: int = 10,
    stem: str = "bench",
    render: bool = True,
) -> BenchReport:
    """Generate the corpus, measure, write <stem>.csv and <stem>.png."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = [
        _measure_instance(
            InstanceSpec(n=n, m=m, k=2, seed=1000 * m + s, planted=True), k, draws
        )
        for m in m_ladder
        for s in range(seeds_per_m)
    ]

    buckets = []
    for m in m_ladder:
        sub = [r for r in rows if r["m"] == m]
        buckets.append(
            {
                "m": m,
                "mean_epsilon": statistics.fmean(r["epsilon"] for r in sub),
                "mean_rejection_work": statistics.fmean(
                    r["rejection_mean_work"] for r in sub
                ),
            }
        )
    by_eps = sorted(buckets, key=lambda b: -b["mean_epsilon"])
    monotone = all(
        a["mean_rejection_work"] <= b["mean_rejection_work"] + 1e-12
        for a, b in zip(by_eps, by_eps[1:])
    )
    bound_ok_all = all(r["bound_ok"] for r in rows)

    csv_path = out / f"{stem}.csv"
    with open(csv_path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)

    png_path = None
    if render:
        png_path = str(out / f"{stem}.png")
        render_figure(rows, by_eps, png_path)
    return BenchReport(
        rows=rows,
        buckets=by_eps,
        monotone=monotone,
        bound_ok_all=bound_ok_all,
        csv_path=str(csv_path),
        png_path=png_path,
    )


def render_figure(rows: list[dict], buckets: list[dict], path: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4.2))

    ax1.scatter(
        [r["epsilon"] for r in rows],
        [r["rejection_mean_work"] for r in rows],
        s=14,
        alpha=0.6,
        label="instances",
    )
    ax1.plot(
        [b["mean_epsilon"] for b in buckets],
        [b["mean_rejection_work"] for b in buckets],
        "o-",
        color="crimson",
        label="bucket means",
    )
    ax1.set_xscale("log")
    ax1.set_yscale("log")
    ax1.set_xlabel("measured solution density")
    ax1.set_ylabel("mean rejection work per draw")
    ax1.set_title("rejection work vs density")
    ax1.legend()

    xs = [r["min_single_work"] for r in rows]
    ax2.scatter(xs, [r["winner_work"] for r in rows], s=14, alpha=0.6)
    hi = max(xs) if xs else 1
    step = max(r["max_step"] for r in rows)
    ax2.plot([0, hi], [0, hi], "--", color="gray", label="y = x")
    ax2.plot([0, hi], [step, 2 * hi + step], "-", color="crimson", label="2x + max step")
    ax2.set_xlabel("best single-strategy work")
    ax2.set_ylabel("racer winner work")
    ax2.set_title("racing overhead bound")
    ax2.legend()

    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
