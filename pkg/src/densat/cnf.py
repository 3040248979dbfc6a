"""CNF formulas with DIMACS I/O, restriction, unit propagation and evaluation.

Literals are nonzero ints in the DIMACS convention: variable ``v`` appears
positively as ``v`` and negated as ``-v``; negation is just unary minus.
Assignments are plain dicts mapping variable index to 0 or 1.

A formula carries an explicit variable universe.  Parsed formulas have the
contiguous universe ``1..n``; restricting a formula removes the assigned
variables from the universe, so solution counts over restricted formulas
automatically account for variables that no longer occur in any clause
(each contributes a factor of two).
"""

from __future__ import annotations

import warnings
from typing import Iterable, Iterator

from .errors import (
    Conflict,
    IncompleteAssignment,
    LiteralOutOfRange,
    MalformedDimacs,
    MalformedHeader,
    TautologicalClause,
)

Assignment = dict[int, int]


class Clause:
    """An immutable disjunction of literals.

    Literals keep their first-seen order (used for deterministic branching)
    but equality and hashing treat a clause as a set of literals.  Repeated
    literals collapse; a literal together with its negation is rejected.
    """

    __slots__ = ("literals", "_key", "_hash")

    def __init__(self, literals: Iterable[int]):
        seen: dict[int, None] = {}
        for lit in literals:
            if not isinstance(lit, int) or lit == 0:
                raise MalformedDimacs(f"bad literal {lit!r}")
            if -lit in seen:
                raise TautologicalClause(
                    f"clause contains {lit} and {-lit}"
                )
            seen.setdefault(lit, None)
        self.literals: tuple[int, ...] = tuple(seen)
        self._key = frozenset(self.literals)
        self._hash = hash(self._key)

    @property
    def variables(self) -> frozenset[int]:
        return frozenset(abs(l) for l in self.literals)

    def __len__(self) -> int:
        return len(self.literals)

    def __iter__(self) -> Iterator[int]:
        return iter(self.literals)

    def __contains__(self, lit: int) -> bool:
        return lit in self._key

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Clause) and self._key == other._key

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return "Clause(%s)" % (", ".join(map(str, self.literals)))


EMPTY_CLAUSE = Clause(())


def _restrict_clause(clause: Clause, beta: Assignment) -> Clause | None:
    """Apply a partial assignment to one clause.

    Returns None when the clause is satisfied, otherwise the clause with
    falsified literals removed (possibly empty).
    """
    kept: list[int] = []
    changed = False
    for lit in clause.literals:
        v = beta.get(abs(lit))
        if v is None:
            kept.append(lit)
        elif (v == 1) == (lit > 0):
            return None
        else:
            changed = True
    if not changed:
        return clause
    c = Clause.__new__(Clause)
    c.literals = tuple(kept)
    c._key = frozenset(kept)
    c._hash = hash(c._key)
    return c


def restrict_clauses(
    clauses: Iterable[Clause], beta: Assignment
) -> tuple[Clause, ...]:
    """Restrict a clause list, dropping satisfied clauses and duplicates."""
    out: dict[frozenset[int], Clause] = {}
    for clause in clauses:
        r = _restrict_clause(clause, beta)
        if r is not None and r._key not in out:
            out[r._key] = r
    return tuple(out.values())


class CnfFormula:
    """A CNF formula over an explicit variable universe.

    Clauses are kept in first-seen input order with duplicates collapsed;
    equality ignores clause order.  The empty clause is representable and
    the clause set may be empty.
    """

    def __init__(
        self,
        clauses: Iterable[Clause | Iterable[int]] = (),
        num_vars: int | None = None,
        universe: Iterable[int] | None = None,
    ):
        cl: dict[frozenset[int], Clause] = {}
        for c in clauses:
            if not isinstance(c, Clause):
                c = Clause(c)
            if c._key not in cl:
                cl[c._key] = c
        self.clauses: tuple[Clause, ...] = tuple(cl.values())
        if universe is not None:
            self.universe: frozenset[int] = frozenset(universe)
        elif num_vars is not None:
            self.universe = frozenset(range(1, num_vars + 1))
        else:
            top = max(
                (max(map(abs, c.literals)) for c in self.clauses if c.literals),
                default=0,
            )
            self.universe = frozenset(range(1, top + 1))
        for c in self.clauses:
            for lit in c.literals:
                if abs(lit) not in self.universe:
                    raise LiteralOutOfRange(
                        f"literal {lit} outside universe"
                    )
        self._clause_keys = frozenset(cl)
        self._vbl: frozenset[int] | None = None
        self._mask_data: tuple | None = None

    # -- basic structure ------------------------------------------------

    @property
    def num_vars(self) -> int:
        return len(self.universe)

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def variables(self) -> frozenset[int]:
        """Variables that occur in at least one clause."""
        if self._vbl is None:
            self._vbl = frozenset(
                abs(l) for c in self.clauses for l in c.literals
            )
        return self._vbl

    def max_width(self) -> int:
        return max((len(c) for c in self.clauses), default=0)

    def has_empty_clause(self) -> bool:
        return EMPTY_CLAUSE._key in self._clause_keys

    def is_empty(self) -> bool:
        """True for the empty formula {} (no clauses), which is satisfied."""
        return not self.clauses

    def __contains__(self, clause: Clause) -> bool:
        return clause._key in self._clause_keys

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, CnfFormula)
            and self.universe == other.universe
            and self._clause_keys == other._clause_keys
        )

    def __hash__(self) -> int:
        return hash((self.universe, self._clause_keys))

    def __repr__(self) -> str:
        return f"CnfFormula(n={self.num_vars}, m={self.num_clauses})"

    # -- semantics ------------------------------------------------------

    def restrict(self, beta: Assignment) -> "CnfFormula":
        """The formula after fixing the variables in beta.

        Satisfied clauses are removed, falsified literals deleted, and the
        assigned variables leave the universe.  May produce the empty
        clause.
        """
        for v in beta:
            if v not in self.universe:
                raise LiteralOutOfRange(f"variable {v} outside universe")
        f = CnfFormula.__new__(CnfFormula)
        f.clauses = restrict_clauses(self.clauses, beta)
        f.universe = self.universe.difference(beta)
        f._clause_keys = frozenset(c._key for c in f.clauses)
        f._vbl = None
        f._mask_data = None
        return f

    def unit_propagate(self) -> tuple["CnfFormula", Assignment]:
        """Run unit-clause reduction to a fixed point.

        Returns the residual formula (no unit clauses, no empty clause)
        together with the forced assignment.  Raises Conflict when the
        empty clause appears.
        """
        if self.has_empty_clause():
            raise Conflict("empty clause present")
        forced: Assignment = {}
        current = self
        while True:
            unit = next((c for c in current.clauses if len(c) == 1), None)
            if unit is None:
                return current, forced
            lit = unit.literals[0]
            forced[abs(lit)] = 1 if lit > 0 else 0
            current = current.restrict({abs(lit): forced[abs(lit)]})
            if current.has_empty_clause():
                raise Conflict(f"conflict after forcing {lit}")

    def evaluate(self, alpha: Assignment) -> int:
        """Evaluate under a full assignment of the universe; returns 0 or 1."""
        if not self.universe <= alpha.keys():
            missing = self.universe - alpha.keys()
            raise IncompleteAssignment(f"unassigned variables: {sorted(missing)}")
        for clause in self.clauses:
            for lit in clause.literals:
                if (alpha[abs(lit)] == 1) == (lit > 0):
                    break
            else:
                return 0
        return 1

    # -- bitmask fast path ---------------------------------------------
    #
    # Samplers evaluate millions of candidate assignments; they use an
    # integer mask per assignment (bit j = value of the j-th variable in
    # sorted universe order) instead of dicts.

    def _masks(self):
        if self._mask_data is None:
            order = sorted(self.universe)
            pos_of = {v: i for i, v in enumerate(order)}
            clause_masks = []
            for c in self.clauses:
                pos = 0
                neg = 0
                for lit in c.literals:
                    bit = 1 << pos_of[abs(lit)]
                    if lit > 0:
                        pos |= bit
                    else:
                        neg |= bit
                clause_masks.append((pos, neg))
            full = (1 << len(order)) - 1
            self._mask_data = (order, pos_of, tuple(clause_masks), full)
        return self._mask_data

    def eval_mask(self, mask: int) -> bool:
        _, _, clause_masks, full = self._masks()
        for pos, neg in clause_masks:
            if not (mask & pos) and not (neg & ~mask & full):
                return False
        return True

    def mask_to_assignment(self, mask: int) -> Assignment:
        order = self._masks()[0]
        return {v: (mask >> i) & 1 for i, v in enumerate(order)}

    def assignment_to_mask(self, alpha: Assignment) -> int:
        order = self._masks()[0]
        mask = 0
        for i, v in enumerate(order):
            if alpha[v]:
                mask |= 1 << i
        return mask


# -- DIMACS I/O ---------------------------------------------------------


def parse_dimacs(text: str | bytes, lenient: bool = False) -> CnfFormula:
    """Parse DIMACS CNF.

    Clauses are zero-terminated token streams and may span lines; 'c'
    lines are comments.  Tautological clauses are an error unless
    ``lenient`` is set, in which case they are dropped with a warning.
    A clause count differing from the header is a warning, not an error.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8", errors="replace")
    tokens: list[str] = []
    header: tuple[int, int] | None = None
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("c"):
            continue
        if stripped == "%":
            break
        if header is None:
            parts = stripped.split()
            if len(parts) != 4 or parts[0] != "p" or parts[1] != "cnf":
                raise MalformedHeader(f"expected 'p cnf n m', got {stripped!r}")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError as exc:
                raise MalformedHeader(f"non-integer header field: {stripped!r}") from exc
            if n < 0 or m < 0:
                raise MalformedHeader("negative n or m in header")
            header = (n, m)
            continue
        tokens.extend(stripped.split())
    if header is None:
        raise MalformedHeader("missing 'p cnf' header")
    n, m = header

    clauses: list[Clause] = []
    pending: list[int] = []
    for tok in tokens:
        try:
            lit = int(tok)
        except ValueError as exc:
            raise MalformedDimacs(f"non-integer token {tok!r}") from exc
        if lit == 0:
            try:
                clauses.append(Clause(pending))
            except TautologicalClause:
                if not lenient:
                    raise
                warnings.warn(f"dropping tautological clause {pending}")
            pending = []
            continue
        if abs(lit) > n:
            raise LiteralOutOfRange(f"literal {lit} exceeds declared n={n}")
        pending.append(lit)
    if pending:
        warnings.warn("clause without terminating 0 at end of input")
        try:
            clauses.append(Clause(pending))
        except TautologicalClause:
            if not lenient:
                raise
            warnings.warn(f"dropping tautological clause {pending}")

    formula = CnfFormula(clauses, num_vars=n)
    if formula.num_clauses != m:
        warnings.warn(
            f"header declares {m} clauses, parsed {formula.num_clauses}"
        )
    return formula


def write_dimacs(formula: CnfFormula) -> str:
    """Serialize to DIMACS text; parse(write(F)) == F up to clause order."""
    top = max(formula.universe, default=0)
    lines = [f"p cnf {top} {formula.num_clauses}"]
    for clause in formula.clauses:
        lines.append(" ".join(map(str, clause.literals)) + " 0")
    return "\n".join(lines) + "\n"
