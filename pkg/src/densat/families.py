"""Greedy independent clause families: stars, triangles, boundary sets.

The construction pipeline:

  * ``one_maximal_matching`` -- a maximal matching over the width-2
    clauses (variables as vertices), improved by length-3 augmenting
    paths until no member can be traded for two disjoint clauses.
  * level 1 -- each 1-star is upgraded to a non-monotone 2-star or a
    triangle when the clause order offers one.
  * level i >= 2 -- each live monotone (i-1)-star grows by one clause
    through its center, with a fresh leaf variable.

All greedy scans follow input clause order, so families are a pure
function of the formula.  Unit clauses join as degenerate frozen
members: a one-clause star whose local pool has 1 of 2 assignments;
they are never upgraded and their variables are excluded from the
boundary set W'.
"""

from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass
from functools import cached_property

from .cnf import Assignment, Clause, CnfFormula
from .errors import ConstructionViolation, DomainError, NotTwoCnf


# -- member types ------------------------------------------------------


@dataclass(frozen=True)
class Star:
    """i clauses pairwise intersecting in exactly one center variable.

    ``centers`` holds one variable for arity >= 2; a 1-star records both
    of its variables since either could become the center later.
    Monotone means the center keeps one polarity across all clauses.
    """

    clauses: tuple[Clause, ...]
    centers: tuple[int, ...]
    monotone: bool

    def __post_init__(self):
        if not self.clauses:
            raise ConstructionViolation("star needs at least one clause")
        widths = {len(c.literals) for c in self.clauses}
        if self.is_unit:
            if self.centers != (abs(self.clauses[0].literals[0]),) or not self.monotone:
                raise ConstructionViolation("malformed unit member")
            return
        if widths != {2}:
            raise ConstructionViolation(f"star clause widths {widths}")
        c = self.centers[0]
        if self.arity == 1:
            a, b = (abs(l) for l in self.clauses[0].literals)
            if self.centers != (a, b) or not self.monotone:
                raise ConstructionViolation("1-star must record both centers")
            return
        if len(self.centers) != 1:
            raise ConstructionViolation("arity >= 2 star has one center")
        for x, y in itertools.combinations(self.clauses, 2):
            if x.variables & y.variables != {c}:
                raise ConstructionViolation("clauses must pairwise meet in the center")
        pols = {1 if c in cl else -1 for cl in self.clauses}
        if self.monotone != (len(pols) == 1):
            raise ConstructionViolation("monotone flag disagrees with polarities")
        if not self.monotone and self.arity != 2:
            raise ConstructionViolation("non-monotone stars have arity 2")

    @property
    def arity(self) -> int:
        return len(self.clauses)

    @property
    def is_unit(self) -> bool:
        return len(self.clauses[0].literals) == 1

    @property
    def center(self) -> int:
        return self.centers[0]

    def center_literal(self, center: int | None = None) -> int:
        """The center's literal as it appears in the first clause."""
        c = self.centers[0] if center is None else center
        return c if c in self.clauses[0] else -c

    @cached_property
    def variables(self) -> frozenset[int]:
        return frozenset(v for cl in self.clauses for v in cl.variables)


@dataclass(frozen=True)
class Triangle:
    """Three clauses on three variables; every 2-subset is a star."""

    clauses: tuple[Clause, ...]

    def __post_init__(self):
        if len(self.clauses) != 3 or any(len(c.literals) != 2 for c in self.clauses):
            raise ConstructionViolation("triangle is three width-2 clauses")
        if len(self.variables) != 3:
            raise ConstructionViolation("triangle spans exactly three variables")
        shared = []
        for x, y in itertools.combinations(self.clauses, 2):
            inter = x.variables & y.variables
            if len(inter) != 1:
                raise ConstructionViolation("triangle pairs share one variable")
            shared.extend(inter)
        if len(set(shared)) != 3:
            raise ConstructionViolation("triangle must not be a star")

    @cached_property
    def variables(self) -> frozenset[int]:
        return frozenset(v for cl in self.clauses for v in cl.variables)


Member = Star | Triangle


@functools.lru_cache(maxsize=None)
def member_solutions(member: Member) -> tuple[Assignment, ...]:
    """All local assignments over the member's variables satisfying it.

    Monotone i-star: 2^i + 1 of 2^(i+1).  Non-monotone 2-star: 4 of 8.
    Triangle: 3 or 4 of 8 depending on polarities.  Unit: 1 of 2.
    Callers must not mutate the returned dicts.
    """
    vs = sorted(member.variables)
    sols = []
    for bits in itertools.product((0, 1), repeat=len(vs)):
        alpha = dict(zip(vs, bits))
        if all(
            any(alpha[abs(l)] == (1 if l > 0 else 0) for l in cl.literals)
            for cl in member.clauses
        ):
            sols.append(alpha)
    return tuple(sols)


# -- family ------------------------------------------------------------


@dataclass(frozen=True)
class FamilyStats:
    """Member census: s[i] monotone i-stars, t triangles, q non-monotone
    2-stars, units degenerate width-1 members; r(i) = sum_{j>=i} s[j]."""

    level: int
    s: tuple[int, ...]
    t: int
    q: int
    units: int

    def r(self, i: int) -> int:
        return sum(self.s[i:])

    def as_dict(self) -> dict:
        return {
            "level": self.level,
            "s": {i: c for i, c in enumerate(self.s) if i and c},
            "t": self.t,
            "q": self.q,
            "units": self.units,
            "r": {i: self.r(i) for i in range(1, len(self.s)) if self.r(i)},
        }


@dataclass(frozen=True)
class IndependentFamily:
    members: tuple[Member, ...]
    level: int

    def __post_init__(self):
        seen: set[int] = set()
        for m in self.members:
            if not seen.isdisjoint(m.variables):
                raise ConstructionViolation("family members share variables")
            seen |= m.variables

    @cached_property
    def variables(self) -> frozenset[int]:
        return frozenset(v for m in self.members for v in m.variables)

    def iter_clauses(self):
        for m in self.members:
            yield from m.clauses

    @cached_property
    def stats(self) -> FamilyStats:
        s = [0] * (max((m.arity for m in self.members if isinstance(m, Star)), default=0) + 1)
        t = q = units = 0
        for m in self.members:
            if isinstance(m, Triangle):
                t += 1
            elif m.is_unit:
                units += 1
            elif not m.monotone:
                q += 1
            else:
                s[m.arity] += 1
        return FamilyStats(level=self.level, s=tuple(s), t=t, q=q, units=units)


@dataclass(frozen=True)
class BoundarySets:
    """W = vbl(M); W' = members' variables reachable from outside W by a
    width-2 clause with exactly one variable in W (unit members excluded)."""

    w: frozenset[int]
    w_prime: frozenset[int]

    def __post_init__(self):
        if not self.w_prime <= self.w:
            raise ConstructionViolation("W' must be a subset of W")


# -- greedy construction -----------------------------------------------


def _require_two_cnf(formula: CnfFormula) -> None:
    if formula.max_width() > 2:
        raise NotTwoCnf(f"clause width {formula.max_width()} exceeds 2")


def max_disjoint_clauses(formula: CnfFormula) -> list[Clause]:
    """Greedy maximal set of pairwise variable-disjoint clauses.

    The empty clause, having no variables, is always selected; any later
    use of the pool then certifies unsatisfiability.
    """
    chosen: list[Clause] = []
    covered: set[int] = set()
    for c in formula.clauses:
        if covered.isdisjoint(c.variables):
            chosen.append(c)
            covered |= c.variables
    return chosen


def _one_star(clause: Clause) -> Star:
    a, b = (abs(l) for l in clause.literals)
    return Star(clauses=(clause,), centers=(a, b), monotone=True)


def _var_index(clauses: tuple[Clause, ...]) -> dict[int, list[int]]:
    index: dict[int, list[int]] = {}
    for i, c in enumerate(clauses):
        if len(c.literals) == 2:
            for v in c.variables:
                index.setdefault(v, []).append(i)
    return index


def _candidates(index, clauses, vars_):
    ids = sorted({i for v in vars_ for i in index.get(v, ())})
    return [clauses[i] for i in ids]


def one_maximal_matching(formula: CnfFormula) -> IndependentFamily:
    """Level-0 family: greedy matching, then length-3 augmenting passes.

    A 1-star member C is traded for two disjoint width-2 clauses D1, D2
    whenever both avoid the other members' variables; passes repeat until
    no trade applies, so no single member blocks two independent clauses.
    Unit clauses join the matching as degenerate members but take no part
    in trades: unit reduction fixes their variables before any residual
    ever reaches the counting subroutine, so maximality over width-2
    clauses is the property the boundary argument consumes.
    """
    _require_two_cnf(formula)
    members: list[Member] = []
    covered: set[int] = set()
    for c in formula.clauses:
        if c.variables and covered.isdisjoint(c.variables):
            if len(c.literals) == 1:
                members.append(
                    Star(clauses=(c,), centers=(abs(c.literals[0]),), monotone=True)
                )
            else:
                members.append(_one_star(c))
            covered |= c.variables

    index = _var_index(formula.clauses)
    changed = True
    while changed:
        changed = False
        for i, mem in enumerate(members):
            if not isinstance(mem, Star) or mem.is_unit or mem.arity != 1:
                continue
            cv = mem.variables
            pair = None
            for d1 in _candidates(index, formula.clauses, cv):
                if d1 is mem.clauses[0] or not (d1.variables & covered) <= cv:
                    continue
                rest = cv - d1.variables
                for d2 in _candidates(index, formula.clauses, rest):
                    if (
                        d2.variables.isdisjoint(d1.variables)
                        and (d2.variables & covered) <= cv
                    ):
                        pair = (d1, d2)
                        break
                if pair:
                    break
            if pair:
                members[i : i + 1] = [_one_star(pair[0]), _one_star(pair[1])]
                covered |= pair[0].variables | pair[1].variables
                changed = True
                break
    return IndependentFamily(members=tuple(members), level=0)


def _polarity(clause: Clause, var: int) -> int:
    return 1 if var in clause else -1


def _stage_one(formula: CnfFormula, m0: IndependentFamily) -> IndependentFamily:
    """Upgrade 1-stars to non-monotone 2-stars or triangles, greedily."""
    index = _var_index(formula.clauses)
    members = list(m0.members)
    vbl = {v for m in members for v in m.variables}
    for i, mem in enumerate(members):
        if not isinstance(mem, Star) or mem.is_unit or mem.arity != 1:
            continue
        c0 = mem.clauses[0]
        for d in _candidates(index, formula.clauses, c0.variables):
            shared = d.variables & c0.variables
            if len(shared) != 1:
                continue
            (x,) = shared
            (z,) = d.variables - shared
            if z in vbl:
                continue
            if _polarity(d, x) != _polarity(c0, x):
                members[i] = Star(clauses=(c0, d), centers=(x,), monotone=False)
                vbl.add(z)
                break
            (o,) = c0.variables - shared
            closing = next(
                (e for e in _candidates(index, formula.clauses, {o}) if e.variables == {o, z}),
                None,
            )
            if closing is not None:
                members[i] = Triangle(clauses=(c0, d, closing))
                vbl.add(z)
                break
    return IndependentFamily(members=tuple(members), level=1)


def _extend_stage(
    formula: CnfFormula, prev: IndependentFamily, level: int
) -> IndependentFamily:
    """Grow each live monotone (level-1)-star by one clause through its center."""
    index = _var_index(formula.clauses)
    members = list(prev.members)
    vbl = {v for m in members for v in m.variables}
    for i, mem in enumerate(members):
        if (
            not isinstance(mem, Star)
            or mem.is_unit
            or not mem.monotone
            or mem.arity != level - 1
        ):
            continue
        for d in _candidates(index, formula.clauses, set(mem.centers)):
            shared = d.variables & mem.variables
            if len(shared) != 1:
                continue
            (x,) = shared
            if x not in mem.centers:
                continue
            (z,) = d.variables - shared
            if z in vbl:
                continue
            if _polarity(d, x) != (1 if mem.center_literal(x) > 0 else -1):
                continue
            members[i] = Star(clauses=mem.clauses + (d,), centers=(x,), monotone=True)
            vbl.add(z)
            break
    return IndependentFamily(members=tuple(members), level=level)


def build_family_sequence(formula: CnfFormula, k: int = 7) -> list[IndependentFamily]:
    """The families M_0 .. M_k for one formula, deterministically."""
    _require_two_cnf(formula)
    if not 2 <= k <= 12:
        raise DomainError(f"family depth k={k} outside 2..12")
    fams = [one_maximal_matching(formula)]
    fams.append(_stage_one(formula, fams[0]))
    for level in range(2, k + 1):
        fams.append(_extend_stage(formula, fams[-1], level))
    return fams


# -- boundary sets -----------------------------------------------------


def boundary_sets(formula: CnfFormula, family: IndependentFamily) -> BoundarySets:
    """W and W' for a family, with the construction-validity check.

    For level >= 1 each member may contribute at most one variable to
    W', and only a live level-arity star center or a non-monotone
    2-star center qualifies; anything else means the greedy construction
    is broken and raises ConstructionViolation.
    """
    w = family.variables
    owner: dict[int, int] = {}
    unit_vars: set[int] = set()
    for i, mem in enumerate(family.members):
        for v in mem.variables:
            owner[v] = i
        if isinstance(mem, Star) and mem.is_unit:
            unit_vars.add(mem.center)
    w_prime: set[int] = set()
    contrib: dict[int, set[int]] = {}
    for c in formula.clauses:
        if len(c.literals) != 2:
            continue
        in_w = [v for v in c.variables if v in w]
        if len(in_w) != 1 or in_w[0] in unit_vars:
            continue
        w_prime.add(in_w[0])
        contrib.setdefault(owner[in_w[0]], set()).add(in_w[0])

    if family.level >= 1:
        for i, vars_ in contrib.items():
            mem = family.members[i]
            if len(vars_) > 1:
                raise ConstructionViolation(
                    f"member {i} contributes {sorted(vars_)} to W'"
                )
            (x,) = vars_
            live_center = (
                isinstance(mem, Star)
                and not mem.is_unit
                and mem.monotone
                and mem.arity == family.level
                and x in mem.centers
            )
            bistar_center = (
                isinstance(mem, Star) and not mem.monotone and x == mem.center
            )
            if not (live_center or bistar_center):
                raise ConstructionViolation(
                    f"W' variable {x} is not an admissible center (member {i})"
                )
        stats = family.stats
        if len(w_prime) > stats.r(family.level) + stats.q:
            raise ConstructionViolation("W' exceeds live centers plus 2-star centers")
    return BoundarySets(w=w, w_prime=frozenset(w_prime))


# -- the family pool ---------------------------------------------------


def _check_universe(family: IndependentFamily, n: int) -> None:
    if family.variables and max(family.variables) > n:
        raise DomainError("family variables exceed the n-variable universe")


def family_pool_count(family: IndependentFamily, n: int) -> int:
    """Number of full assignments on n variables satisfying every member.

    Exact product of per-member counts times 2^(free variables); the
    closed form 2^(-t-q) * prod (2^i+1)/2^(i+1) * 2^n matches it except
    for triangles whose polarities admit only 3 local assignments.
    """
    _check_universe(family, n)
    count = 1 << (n - len(family.variables))
    for m in family.members:
        count *= len(member_solutions(m))
    return count


def sample_family_pool(
    family: IndependentFamily, n: int, rng: random.Random
) -> Assignment:
    """Uniform draw from the pool counted by family_pool_count.

    Consumes randomness member by member in family order, then one coin
    per free variable in ascending order.
    """
    _check_universe(family, n)
    alpha: Assignment = {}
    for m in family.members:
        sols = member_solutions(m)
        alpha.update(sols[rng.randrange(len(sols))])
    for v in range(1, n + 1):
        if v not in alpha:
            alpha[v] = rng.randrange(2)
    return alpha


def family_report(formula: CnfFormula, k: int = 7) -> list[dict]:
    """Per-level census of the family sequence plus boundary sizes."""
    report = []
    for fam in build_family_sequence(formula, k):
        entry = fam.stats.as_dict()
        bounds = boundary_sets(formula, fam)
        entry["w"] = len(bounds.w)
        entry["w_prime"] = len(bounds.w_prime)
        report.append(entry)
    return report
