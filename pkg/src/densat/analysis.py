"""Exponent calculations backing the solver suite.

Branching numbers tau(v), the floor-count exponent B(lambda), the
delta linear program balancing enumeration against rejection work, the
vertex-cover promise exponent, and the entropy machinery for biased
random walks.  Includes the small dense simplex solver the LP needs;
everything here is pure and reentrant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    DomainError,
    Infeasible,
    LambdaOutOfRange,
    RatioOutOfRange,
    TooLarge,
    Unbounded,
)

BranchingVector = tuple[float, ...]

_MAX_VARS = 32
_MAX_ROWS = 64
_FEAS_TOL = 1e-9
_PIVOT_TOL = 1e-10


# ---------------------------------------------------------------------------
# roots and closed forms


def branching_number(vector: Sequence[float]) -> float:
    """Smallest x >= 1 with sum(x**-b for b in vector) == 1.

    Bisection to 1e-4 then Newton polish; the map is strictly decreasing
    for x > 1, so [1, t**(1/min b)] always brackets the root.
    """
    v = tuple(float(b) for b in vector)
    if not v:
        raise DomainError("branching vector must be nonempty")
    if any(b <= 0 for b in v):
        raise DomainError(f"branching vector entries must be positive: {v}")
    if len(v) == 1:
        return 1.0

    def f(x: float) -> float:
        return math.fsum(x**-b for b in v) - 1.0

    def fprime(x: float) -> float:
        return math.fsum(-b * x ** (-b - 1.0) for b in v)

    lo, hi = 1.0, len(v) ** (1.0 / min(v))
    while hi - lo > 1e-4:
        mid = 0.5 * (lo + hi)
        if f(mid) >= 0.0:
            lo = mid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    for _ in range(60):
        fx = f(x)
        if abs(fx) < 1e-13:
            break
        x -= fx / fprime(x)
    if abs(f(x)) >= 1e-9:
        raise DomainError(f"branching number failed to converge for {v}")
    return x


def hirsch_exponent(lam: float) -> float:
    """B = 1/(log_lam 2 - 1); the density exponent of the floor search."""
    if not 1.0 < lam < 2.0:
        raise LambdaOutOfRange(f"lambda must lie in (1, 2), got {lam}")
    return 1.0 / (math.log(2.0, lam) - 1.0)


def warmup_exponent() -> float:
    """log_4 3: density exponent of the disjoint-clause warmup sampler."""
    return math.log2(3.0) / 2.0


def threesat_exponent() -> float:
    """log_8 7: density exponent of the 3-CNF rejection/enumeration race."""
    return math.log2(7.0) / 3.0


def vc_exponent(rho: float, kn_ratio: float) -> float:
    """log(rho) / log(1/(rho*kn_ratio)); below 1 iff kn_ratio < 1/rho**2."""
    if rho <= 1.0:
        raise RatioOutOfRange(f"rho must exceed 1, got {rho}")
    if kn_ratio <= 0.0:
        raise RatioOutOfRange(f"k/n ratio must be positive, got {kn_ratio}")
    if kn_ratio >= 1.0 / rho:
        raise RatioOutOfRange(
            f"k/n ratio {kn_ratio} must stay below 1/rho = {1.0 / rho:.6f}"
        )
    return math.log(rho) / math.log(1.0 / (rho * kn_ratio))


def entropy(x: float) -> float:
    """Binary entropy, bits; H(0) = H(1) = 0."""
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"entropy argument {x} outside [0, 1]")
    if x in (0.0, 1.0):
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def entropy_inv(y: float) -> float:
    """Inverse of entropy on the [0, 1/2] branch."""
    if not 0.0 <= y <= 1.0:
        raise DomainError(f"entropy_inv argument {y} outside [0, 1]")
    if y == 0.0:
        return 0.0
    if y == 1.0:  # H is flat at 1/2; bisection alone stalls a few ulps short
        return 0.5
    lo, hi = 0.0, 0.5
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if entropy(mid) < y:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def schoening_exponent(k: int, delta: float) -> float:
    """Per-variable log2 running-time base of the restarted walk when the
    instance carries at least 2**(delta*n) solutions."""
    if k < 2:
        raise DomainError(f"clause width k must be at least 2, got {k}")
    if not 0.0 <= delta <= 1.0:
        raise DomainError(f"delta {delta} outside [0, 1]")
    hk = entropy(1.0 / k)
    if delta <= hk:
        return (1.0 - hk) + (1.0 / k - entropy_inv(delta)) * math.log2(k - 1.0)
    return 1.0 - delta


# ---------------------------------------------------------------------------
# dense simplex


@dataclass(frozen=True)
class LpProblem:
    """maximize objective @ x  s.t.  a_ub @ x <= b_ub, a_lb @ x >= b_lb, x >= 0."""

    objective: tuple[float, ...]
    a_ub: tuple[tuple[float, ...], ...] = ()
    b_ub: tuple[float, ...] = ()
    a_lb: tuple[tuple[float, ...], ...] = ()
    b_lb: tuple[float, ...] = ()
    names: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        n = len(self.objective)
        if n == 0:
            raise DomainError("LP needs at least one variable")
        if n > _MAX_VARS:
            raise TooLarge(f"{n} variables exceeds the {_MAX_VARS} supported")
        if len(self.a_ub) != len(self.b_ub) or len(self.a_lb) != len(self.b_lb):
            raise DomainError("constraint matrix and rhs lengths differ")
        rows = len(self.a_ub) + len(self.a_lb)
        if rows > _MAX_ROWS:
            raise TooLarge(f"{rows} constraints exceeds the {_MAX_ROWS} supported")
        for row in (*self.a_ub, *self.a_lb):
            if len(row) != n:
                raise DomainError("constraint row width differs from objective")
        if self.names and len(self.names) != n:
            raise DomainError("variable name count differs from objective")


@dataclass(frozen=True)
class LpSolution:
    status: str
    objective: float
    x: tuple[float, ...]
    names: tuple[str, ...] = ()
    residual: float = 0.0
    meta: dict = field(default_factory=dict)

    def value_of(self, name: str) -> float:
        return self.x[self.names.index(name)]

    @property
    def delta(self) -> float:
        return self.value_of("delta")

    @property
    def lp_tau(self) -> float:
        return self.value_of("lp_tau")

    @property
    def lp_rho(self) -> float:
        return self.value_of("lp_rho")

    @property
    def sigma(self) -> tuple[float, ...]:
        return tuple(
            self.x[i] for i, nm in enumerate(self.names) if nm.startswith("sigma_")
        )


def _lex_smaller(tab: np.ndarray, i: int, j: int, col: int, order) -> bool:
    # rows scaled by their pivot-column entry, compared RHS first
    ai, aj = tab[i, col], tab[j, col]
    for c in order:
        d = tab[i, c] / ai - tab[j, c] / aj
        if abs(d) > 1e-12:
            return d < 0
    return False


def _leaving_row(tab: np.ndarray, col: int, m: int, order) -> int | None:
    best = None
    for i in range(m):
        if tab[i, col] > _PIVOT_TOL:
            if best is None or _lex_smaller(tab, i, best, col, order):
                best = i
    return best


def _pivot(tab: np.ndarray, basis: list[int], row: int, col: int) -> None:
    tab[row] /= tab[row, col]
    for i in range(tab.shape[0]):
        if i != row and abs(tab[i, col]) > 1e-13:
            tab[i] -= tab[i, col] * tab[row]
    basis[row] = col


def _run_simplex(tab: np.ndarray, basis: list[int], m: int, ncols: int) -> None:
    # last row is the (negated) objective; last column the RHS
    order = [ncols] + list(range(ncols))
    while True:
        obj = tab[m, :ncols]
        col = int(np.argmin(obj))
        if obj[col] >= -1e-11:
            return
        row = _leaving_row(tab, col, m, order)
        if row is None:
            raise Unbounded(f"objective unbounded along column {col}")
        _pivot(tab, basis, row, col)


def simplex_solve(problem: LpProblem) -> LpSolution:
    """Two-phase tableau simplex with lexicographic pivot selection."""
    n = len(problem.objective)
    rows = [list(r) for r in problem.a_ub] + [[-a for a in r] for r in problem.a_lb]
    rhs = list(problem.b_ub) + [-b for b in problem.b_lb]
    m = len(rows)

    a = np.array(rows, dtype=float).reshape(m, n)
    b = np.array(rhs, dtype=float)
    flip = b < 0
    slack_sign = np.where(flip, -1.0, 1.0)
    a[flip] *= -1.0
    b[flip] *= -1.0

    art_rows = [i for i in range(m) if flip[i]]
    ncols = n + m + len(art_rows)
    tab = np.zeros((m + 1, ncols + 1))
    tab[:m, :n] = a
    for i in range(m):
        tab[i, n + i] = slack_sign[i]
    for j, i in enumerate(art_rows):
        tab[i, n + m + j] = 1.0
    tab[:m, ncols] = b
    basis = [n + i for i in range(m)]
    for j, i in enumerate(art_rows):
        basis[i] = n + m + j

    if art_rows:
        # phase 1: maximize -sum(artificials); price out the basic ones
        tab[m, n + m : ncols] = 1.0
        for i in art_rows:
            tab[m] -= tab[i]
        _run_simplex(tab, basis, m, ncols)
        if tab[m, ncols] < -_FEAS_TOL:
            raise Infeasible(f"phase 1 left {-tab[m, ncols]:.3e} of artificial mass")
        for i in range(m):
            if basis[i] >= n + m:
                pivot_col = next(
                    (j for j in range(n + m) if abs(tab[i, j]) > _PIVOT_TOL), None
                )
                if pivot_col is not None:
                    _pivot(tab, basis, i, pivot_col)
                # else: redundant row, harmless to leave

    tab[m, :] = 0.0
    tab[m, :n] = [-c for c in problem.objective]
    tab[:, n + m : ncols] = 0.0  # artificials never re-enter
    for i in range(m):
        if basis[i] < n + m and abs(tab[m, basis[i]]) > 1e-13:
            tab[m] -= tab[m, basis[i]] * tab[i]
    _run_simplex(tab, basis, m, ncols)

    x = np.zeros(n)
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = tab[i, ncols]
    x = np.where(np.abs(x) < 1e-12, 0.0, x)

    ax = a @ x
    residual = float(max(np.max(ax - b, initial=0.0), np.max(-x, initial=0.0), 0.0))
    if residual >= _FEAS_TOL:
        raise Infeasible(f"solution violates constraints by {residual:.3e}")
    return LpSolution(
        status="optimal",
        objective=float(np.dot(problem.objective, x)),
        x=tuple(float(v) for v in x),
        names=problem.names,
        residual=residual,
    )


# ---------------------------------------------------------------------------
# the delta linear program


def _delta_problem(c: float, k: int, delta_floor: float | None = None) -> LpProblem:
    # variables: [delta, sigma_1..sigma_k, lp_tau, lp_rho]
    n = k + 3
    i_tau, i_rho = k + 1, k + 2
    obj = [0.0] * n
    obj[0] = 1.0

    geq_rows: list[list[float]] = []
    geq_rhs: list[float] = []

    # pool mass: -tau - rho + sum sigma_i log2((2^i+1)/2^(i+1)) >= delta - 1
    row = [0.0] * n
    row[0] = -1.0
    row[i_tau] = -1.0
    row[i_rho] = -1.0
    for i in range(1, k + 1):
        row[i] = math.log2((2.0**i + 1.0) / 2.0 ** (i + 1))
    geq_rows.append(row)
    geq_rhs.append(-1.0)

    # per-level work: enumeration cost at level ell must reach delta
    for ell in range(1, k + 1):
        row = [0.0] * n
        row[0] = -1.0
        row[i_tau] = 3.0 * math.log2(c)
        row[i_rho] = math.log2(2.0 * c)
        for i in range(1, k + 1):
            row[i] = (
                (i + 1) * math.log2(c) if i < ell else math.log2(1.0 + c**ell)
            )
        geq_rows.append(row)
        geq_rhs.append(0.0)

    if delta_floor is not None:
        row = [0.0] * n
        row[0] = 1.0
        geq_rows.append(row)
        geq_rhs.append(delta_floor)

    names = ("delta", *(f"sigma_{i}" for i in range(1, k + 1)), "lp_tau", "lp_rho")
    return LpProblem(
        objective=tuple(obj),
        a_lb=tuple(tuple(r) for r in geq_rows),
        b_lb=tuple(geq_rhs),
        names=names,
    )


def delta_lp(c: float, k: int) -> LpSolution:
    """Best provable density exponent for the level-racing sampler.

    Maximizes delta over the sigma-profile (fraction of enumeration mass
    per level), lp_tau (triangles) and lp_rho (non-monotone pairs),
    subject to the pool-mass row and one work row per level 1..k.
    Optimality is cross-checked by re-solving with delta forced 1e-4
    higher and confirming infeasibility.
    """
    if c <= 1.0:
        raise DomainError(f"branching constant c must exceed 1, got {c}")
    if k < 2:
        raise DomainError(f"level count k must be at least 2, got {k}")
    sol = simplex_solve(_delta_problem(c, k))

    upward_infeasible = False
    try:
        simplex_solve(_delta_problem(c, k, delta_floor=sol.objective + 1e-4))
    except Infeasible:
        upward_infeasible = True
    meta = dict(sol.meta)
    meta.update(c=c, k=k, upward_infeasible=upward_infeasible)
    return LpSolution(
        status=sol.status,
        objective=sol.objective,
        x=sol.x,
        names=sol.names,
        residual=sol.residual,
        meta=meta,
    )


# ---------------------------------------------------------------------------
# reporting


@dataclass(frozen=True)
class ExponentReport:
    name: str
    value: float
    inputs: dict
    certificate: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "value": self.value,
            "inputs": self.inputs,
            "certificate": self.certificate,
        }


def report_tau(vector: Sequence[float]) -> ExponentReport:
    v = tuple(float(b) for b in vector)
    tau = branching_number(v)
    residual = abs(math.fsum(tau**-b for b in v) - 1.0)
    return ExponentReport(
        name="tau", value=tau, inputs={"vector": list(v)}, certificate={"residual": residual}
    )


def report_hirsch(lam: float | None = None) -> ExponentReport:
    if lam is None:
        lam = branching_number((1.0, 2.0))
    return ExponentReport(
        name="hirschB", value=hirsch_exponent(lam), inputs={"lambda": lam}
    )


DEFAULT_COUNT_BASE = 1.238  # cited growth constant of the counting subroutine


def report_delta(c: float = DEFAULT_COUNT_BASE, k: int = 7) -> ExponentReport:
    sol = delta_lp(c, k)
    return ExponentReport(
        name="delta",
        value=sol.objective,
        inputs={"c": c, "k": k},
        certificate={
            "sigma": list(sol.sigma),
            "lp_tau": sol.lp_tau,
            "lp_rho": sol.lp_rho,
            "residual": sol.residual,
            "upward_infeasible": sol.meta["upward_infeasible"],
        },
    )


def report_vc_exponent(rho: float, kn_ratio: float) -> ExponentReport:
    return ExponentReport(
        name="vcexp",
        value=vc_exponent(rho, kn_ratio),
        inputs={"rho": rho, "kn_ratio": kn_ratio},
    )


def report_schoening(k: int, delta: float) -> ExponentReport:
    return ExponentReport(
        name="schoening-exp",
        value=schoening_exponent(k, delta),
        inputs={"k": k, "delta": delta},
        certificate={"entropy_inv_delta": entropy_inv(delta) if delta <= 1 else None},
    )


def report_constants() -> list[ExponentReport]:
    """The fixed exponents quoted throughout: warmup, 3-CNF race, walk."""
    return [
        ExponentReport(name="warmup", value=warmup_exponent(), inputs={}),
        ExponentReport(name="threesat", value=threesat_exponent(), inputs={}),
        ExponentReport(
            name="schoening-base",
            value=schoening_exponent(3, 0.0),
            inputs={"k": 3, "delta": 0.0},
        ),
    ]
