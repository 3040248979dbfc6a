"""Command-line front end: sample, count, solve, vc, analyze, gen, bench.

Every subcommand is deterministic given (input, flags, seed) and embeds a
run manifest in its output; the seed defaults to the DENSAT_SEED
environment variable, then 0.

Exit codes: 0 success (or an uncertified "unknown"), 1 certified
no-solution, 2 unsatisfiable sampling target, 3 input error, 4 resource
budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .analysis import (
    DEFAULT_COUNT_BASE,
    report_constants,
    report_delta,
    report_hirsch,
    report_schoening,
    report_tau,
    report_vc_exponent,
)
from .bench import DEFAULT_M_LADDER, run_bench
from .cnf import CnfFormula, parse_dimacs, write_dimacs
from .detsearch import BASIC_RULE, MS_RULE, bfs_solve, floor_census_rows
from .errors import (
    Conflict,
    DensatError,
    NodeBudgetExceeded,
    NotTwoCnf,
    Unsatisfiable,
    WorkBudgetExceeded,
)
from .oracle import InstanceSpec, brute_count, gen_random_ksat
from .sampler import SamplerConfig, sample_solution
from .threesat import WalkConfig, schoening, solve3_prop
from .twosat import count_2sat, solve_2sat
from .vcover import (
    gen_random_graph,
    parse_graph,
    vc_bfs_promise,
    vc_branch,
    write_graph,
)

SEED_ENV = "DENSAT_SEED"


@dataclass(frozen=True)
class RunManifest:
    """What produced an output: identical manifest, identical bytes."""

    subcommand: str
    inputs: tuple[str, ...]
    seed: int | None
    flags: dict = field(default_factory=dict)
    format: str = "json"

    def as_dict(self) -> dict:
        return {
            "subcommand": self.subcommand,
            "inputs": list(self.inputs),
            "seed": self.seed,
            "flags": {k: self.flags[k] for k in sorted(self.flags)},
            "format": self.format,
        }


def _emit(payload: dict, manifest: RunManifest, stream=None) -> None:
    out = dict(payload)
    out["manifest"] = manifest.as_dict()
    (stream or sys.stdout).write(json.dumps(out, sort_keys=True) + "\n")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _seed_of(args: argparse.Namespace) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise DensatError(f"{SEED_ENV} must be an integer, got {env!r}") from exc
    return 0


def _bits(assignment: dict[int, int], n: int) -> str:
    return "".join(str(assignment[v]) for v in range(1, n + 1))


# ---------------------------------------------------------------------------
# sample


def _renumber(formula: CnfFormula) -> tuple[CnfFormula, dict[int, int]]:
    """Compact the universe onto 1..n'; returns (formula', new->old map)."""
    old = sorted(formula.universe)
    fwd = {v: i for i, v in enumerate(old, start=1)}
    back = {i: v for v, i in fwd.items()}
    clauses = [
        [lit // abs(lit) * fwd[abs(lit)] for lit in c.literals]
        for c in formula.clauses
    ]
    return CnfFormula(clauses, universe=range(1, len(old) + 1)), back


def _parse_strategy(text: str) -> tuple[str, int | None]:
    if text in ("auto", "rejection", "warmup"):
        return text, None
    if text.startswith("family-enum="):
        try:
            return "enumeration", int(text.split("=", 1)[1])
        except ValueError:
            pass
    raise DensatError(
        f"unknown strategy {text!r}; expected auto, rejection, warmup "
        "or family-enum=L"
    )


def cmd_sample(args: argparse.Namespace) -> int:
    seed = _seed_of(args)
    strategy, ell = _parse_strategy(args.strategy)
    manifest = RunManifest(
        "sample",
        (args.input,),
        seed,
        {
            "n_samples": args.n_samples,
            "strategy": args.strategy,
            "k": args.k,
            "max_work": args.max_work,
            "warn_width": args.warn_width,
        },
    )
    formula = parse_dimacs(_read_text(args.input), lenient=args.warn_width)
    if formula.max_width() > 2 and not args.warn_width:
        raise NotTwoCnf(
            f"clauses of width {formula.max_width()} present; "
            "rerun with --warn-width to attempt unit reduction"
        )
    n = formula.num_vars
    try:
        residual, forced = formula.unit_propagate()
    except Conflict:
        _emit({"status": "unsatisfiable", "n": n}, manifest)
        return 2
    if residual.max_width() > 2:
        raise NotTwoCnf(
            f"width {residual.max_width()} remains after unit reduction"
        )
    if args.warn_width and formula.max_width() > 2:
        print(
            f"warning: width-{formula.max_width()} input reduced to "
            f"{residual.num_clauses} clauses of width <= 2",
            file=sys.stderr,
        )
    compact, back = _renumber(residual)
    cfg = SamplerConfig(
        k=args.k, strategy=strategy, ell=ell, seed=seed, max_work=args.max_work
    )
    rng = random.Random(seed)
    for index in range(args.n_samples):
        try:
            report = sample_solution(compact, cfg, rng)
        except Unsatisfiable:
            _emit({"status": "unsatisfiable", "n": n, "index": index}, manifest)
            return 2
        merged = dict(forced)
        for new, value in report.assignment.items():
            merged[back[new]] = value
        payload = report.as_dict()
        payload.update(
            {"assignment": _bits(merged, n), "n": n, "index": index, "status": "sat"}
        )
        _emit(payload, manifest)
    return 0


# ---------------------------------------------------------------------------
# count


def cmd_count(args: argparse.Namespace) -> int:
    manifest = RunManifest(
        "count", (args.input,), None, {"method": args.method, "limit": args.limit}
    )
    formula = parse_dimacs(_read_text(args.input))
    if args.method == "brute":
        count = brute_count(formula, limit=args.limit)
        payload = {"count": count, "method": "brute", "n": formula.num_vars}
    else:
        result = count_2sat(formula)
        count = result.count
        payload = {
            "count": count,
            "method": "branch2sat",
            "n": formula.num_vars,
            "nodes_expanded": result.nodes_expanded,
        }
    _emit(payload, manifest)
    return 0 if count > 0 else 1


# ---------------------------------------------------------------------------
# solve


def cmd_solve(args: argparse.Namespace) -> int:
    seed = _seed_of(args)
    manifest = RunManifest(
        "solve",
        (args.input,),
        seed,
        {
            "algo": args.algo,
            "epsilon": args.epsilon,
            "rule": args.rule,
            "max_nodes": args.max_nodes,
            "max_restarts": args.max_restarts,
            "flips": args.flips,
            "max_work": args.max_work,
        },
    )
    formula = parse_dimacs(_read_text(args.input))
    n = formula.num_vars

    if args.algo == "aspvall":
        assignment = solve_2sat(formula)
        if assignment is None:
            _emit({"status": "unsat", "n": n, "algo": "aspvall"}, manifest)
            return 1
        _emit(
            {
                "status": "sat",
                "n": n,
                "algo": "aspvall",
                "assignment": _bits(assignment, n) if n else "",
            },
            manifest,
        )
        return 0

    if args.algo == "bfs-ms":
        rule = BASIC_RULE if args.rule == "basic" else MS_RULE
        result = bfs_solve(
            formula, rule=rule, epsilon=args.epsilon, max_nodes=args.max_nodes
        )
        payload = result.as_dict()
        payload["algo"] = "bfs-ms"
        payload["floor_census"] = [
            {"floor": f, "size": s, "cap": cap}
            for f, s, cap in floor_census_rows(result)
        ]
        if result.status == "sat":
            payload["assignment"] = _bits(result.assignment, n) if n else ""
        _emit(payload, manifest)
        return 0 if result.status == "sat" else 1

    if args.algo == "prop33":
        rng = random.Random(seed)
        assignment = solve3_prop(formula, rng, max_work=args.max_work)
        if assignment is None:
            _emit({"status": "unsat", "n": n, "algo": "prop33"}, manifest)
            return 1
        _emit(
            {
                "status": "sat",
                "n": n,
                "algo": "prop33",
                "assignment": _bits(assignment, n) if n else "",
            },
            manifest,
        )
        return 0

    # schoening: one-sided, never certifies unsatisfiability
    cfg = WalkConfig(
        flips_per_restart=args.flips, max_restarts=args.max_restarts, seed=seed
    )
    result = schoening(formula, cfg, random.Random(seed))
    payload = result.as_dict()
    payload["algo"] = "schoening"
    payload["n"] = n
    if result.found:
        payload["assignment"] = _bits(result.assignment, n) if n else ""
    _emit(payload, manifest)
    return 0


# ---------------------------------------------------------------------------
# vertex cover


def cmd_vc(args: argparse.Namespace) -> int:
    manifest = RunManifest(
        "vc",
        (args.input,),
        None,
        {
            "mode": args.mode,
            "k": args.k,
            "epsilon": args.epsilon,
            "max_nodes": args.max_nodes,
        },
    )
    graph = parse_graph(_read_text(args.input))
    if args.mode == "branch":
        cover = vc_branch(graph, args.k)
        if cover is None:
            _emit({"status": "none", "k": args.k, "n": graph.n}, manifest)
            return 1
        _emit(
            {"status": "cover", "k": args.k, "n": graph.n, "cover": sorted(cover)},
            manifest,
        )
        return 0
    if args.epsilon is None:
        raise DensatError("promise mode requires --epsilon")
    result = vc_bfs_promise(
        graph, args.k, args.epsilon, max_nodes=args.max_nodes
    )
    payload = result.as_dict()
    payload.update({"status": "cover", "n": graph.n})
    _emit(payload, manifest)
    return 0


# ---------------------------------------------------------------------------
# analyze


def cmd_analyze(args: argparse.Namespace) -> int:
    flags = {
        "c": args.c,
        "k": args.k,
        "lam": args.lam,
        "rho": args.rho,
        "ratio": args.ratio,
        "delta": args.delta,
        "vector": list(args.vector),
    }
    manifest = RunManifest("analyze:" + args.what, (), None, flags)

    if args.what == "tau":
        if not args.vector:
            raise DensatError("tau needs branching-vector entries, e.g. tau 1 2")
        report = report_tau(tuple(args.vector))
    elif args.what == "hirschB":
        report = report_hirsch(args.lam)
    elif args.what == "delta":
        report = report_delta(c=args.c, k=7 if args.k is None else args.k)
    elif args.what == "vcexp":
        if args.rho is None or args.ratio is None:
            raise DensatError("vcexp needs --rho and --ratio")
        report = report_vc_exponent(args.rho, args.ratio)
    elif args.what == "schoening-exp":
        report = report_schoening(3 if args.k is None else args.k, args.delta)
    else:  # constants
        _emit({"reports": [r.as_dict() for r in report_constants()]}, manifest)
        return 0
    _emit(report.as_dict(), manifest)
    return 0


# ---------------------------------------------------------------------------
# gen


def cmd_gen(args: argparse.Namespace) -> int:
    seed = _seed_of(args)
    manifest = RunManifest(
        "gen",
        (),
        seed,
        {
            "kind": args.kind,
            "n": args.n,
            "m": args.m,
            "k": args.k,
            "planted": args.planted,
        },
        format="text",
    )
    if args.kind == "cnf":
        spec = InstanceSpec(
            n=args.n, m=args.m, k=args.k, seed=seed, planted=args.planted
        )
        body = write_dimacs(gen_random_ksat(spec))
    else:
        body = write_graph(gen_random_graph(args.n, args.m, seed))
    sys.stdout.write("c " + json.dumps(manifest.as_dict(), sort_keys=True) + "\n")
    sys.stdout.write(body)
    return 0


# ---------------------------------------------------------------------------
# bench


def cmd_bench(args: argparse.Namespace) -> int:
    ladder = (
        tuple(int(tok) for tok in args.m_ladder.split(","))
        if args.m_ladder
        else DEFAULT_M_LADDER
    )
    manifest = RunManifest(
        "bench",
        (),
        None,
        {
            "out_dir": args.out_dir,
            "n": args.n,
            "m_ladder": list(ladder),
            "seeds_per_m": args.seeds_per_m,
            "k": args.k,
            "draws": args.draws,
            "stem": args.stem,
            "figure": not args.no_figure,
        },
        format="csv",
    )
    report = run_bench(
        args.out_dir,
        n=args.n,
        m_ladder=ladder,
        seeds_per_m=args.seeds_per_m,
        k=args.k,
        draws=args.draws,
        stem=args.stem,
        render=not args.no_figure,
    )
    _emit(report.summary(), manifest)
    return 0


# ---------------------------------------------------------------------------
# parser wiring


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="densat",
        description="Density-parameterized SAT toolkit: exact uniform 2-CNF "
        "sampling, breadth-first promise search, randomized 3-SAT, vertex "
        "cover, and exponent analysis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p: argparse.ArgumentParser) -> None:
        p.add_argument("--input", default="-", help="path to input, - for stdin")

    p = sub.add_parser("sample", help="uniform satisfying assignments of a 2-CNF")
    add_input(p)
    p.add_argument("--n-samples", type=int, default=1)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument(
        "--strategy",
        default="auto",
        help="auto, rejection, warmup, or family-enum=L",
    )
    p.add_argument("--k", type=int, default=7, help="family construction depth")
    p.add_argument("--max-work", type=int, default=None)
    p.add_argument(
        "--warn-width",
        action="store_true",
        help="accept wider CNF if unit reduction brings it to width <= 2",
    )
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("count", help="count satisfying assignments of a 2-CNF")
    add_input(p)
    p.add_argument("--method", choices=("brute", "branch2sat"), default="branch2sat")
    p.add_argument(
        "--limit", type=int, default=30, help="variable cap for --method brute"
    )
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("solve", help="decide satisfiability")
    add_input(p)
    p.add_argument(
        "--algo",
        choices=("bfs-ms", "schoening", "prop33", "aspvall"),
        default="bfs-ms",
    )
    p.add_argument("--seed", type=int, default=None)
    p.add_argument(
        "--epsilon",
        type=float,
        default=None,
        help="solution-density promise, enables floor diagnostics (bfs-ms)",
    )
    p.add_argument("--rule", choices=("ms", "basic"), default="ms")
    p.add_argument("--max-nodes", type=int, default=500_000)
    p.add_argument("--max-restarts", type=int, default=1000)
    p.add_argument("--flips", type=int, default=None, help="default 3n per restart")
    p.add_argument("--max-work", type=int, default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("vc", help="vertex cover search")
    add_input(p)
    p.add_argument("--mode", choices=("branch", "promise"), default="branch")
    p.add_argument("--k", type=int, required=True)
    p.add_argument(
        "--epsilon",
        type=float,
        default=None,
        help="promised fraction of k-subsets that are covers (promise mode)",
    )
    p.add_argument("--max-nodes", type=int, default=500_000)
    p.set_defaults(func=cmd_vc)

    p = sub.add_parser("analyze", help="runtime-exponent calculator")
    p.add_argument(
        "what",
        choices=("tau", "hirschB", "delta", "vcexp", "schoening-exp", "constants"),
    )
    p.add_argument("vector", type=float, nargs="*", help="branching vector for tau")
    p.add_argument("--c", type=float, default=DEFAULT_COUNT_BASE)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--lam", type=float, default=None)
    p.add_argument("--rho", type=float, default=None)
    p.add_argument("--ratio", type=float, default=None)
    p.add_argument("--delta", type=float, default=0.0)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("gen", help="seeded instance generators")
    p.add_argument("kind", choices=("cnf", "graph"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, default=2, help="clause width (cnf)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument(
        "--planted",
        action="store_true",
        help="repair clauses against a hidden assignment (cnf)",
    )
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="work-vs-density scaling report (CSV + figure)")
    p.add_argument("--out-dir", default="bench-out")
    p.add_argument("--n", type=int, default=12)
    p.add_argument("--m-ladder", default=None, help="comma-separated clause counts")
    p.add_argument("--seeds-per-m", type=int, default=4)
    p.add_argument("--k", type=int, default=7)
    p.add_argument("--draws", type=int, default=10)
    p.add_argument("--stem", default="bench")
    p.add_argument("--no-figure", action="store_true")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reserves 2 for usage errors
        return 0 if exc.code in (0, None) else 3
    try:
        return args.func(args)
    except (WorkBudgetExceeded, NodeBudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (Unsatisfiable, Conflict) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, DensatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
