"""Exception hierarchy shared across the package.

Everything derives from DensatError so callers can catch package errors
with a single except clause.  Input-shaped problems additionally derive
from ValueError.
"""


class DensatError(Exception):
    """Base class for all package errors."""


class MalformedDimacs(DensatError, ValueError):
    """The DIMACS byte stream could not be parsed."""


class MalformedHeader(MalformedDimacs):
    """Missing or unparsable 'p cnf n m' header line."""


class LiteralOutOfRange(MalformedDimacs):
    """A literal references a variable index outside 1..n."""


class TautologicalClause(MalformedDimacs):
    """A clause contains both a literal and its negation."""


class MalformedGraph(DensatError, ValueError):
    """The DIMACS edge-format graph could not be parsed."""


class Conflict(DensatError):
    """Unit propagation derived the empty clause."""


class IncompleteAssignment(DensatError):
    """An operation needed a full assignment but got a partial one."""


class TooLarge(DensatError):
    """Instance exceeds the configured brute-force enumeration limit."""


class Unsatisfiable(DensatError):
    """The sampling or solving target has no satisfying assignment."""


class NotTwoCnf(DensatError, ValueError):
    """Operation requires clause width at most 2."""


class NotUnitCnf(DensatError, ValueError):
    """Operation requires clause width at most 1."""


class EmptyClausePresent(DensatError):
    """A branching step was asked to expand a node containing the empty clause."""


class WorkBudgetExceeded(DensatError):
    """A work budget (rejection draws / counter nodes) ran out."""


class NodeBudgetExceeded(DensatError):
    """The breadth-first floor store outgrew its configured node cap."""


class PromiseViolated(DensatError):
    """A density promise turned out to be false for the given instance."""


class ConstructionViolation(DensatError):
    """An independent-family structural invariant failed; indicates a bug."""


class LambdaOutOfRange(DensatError, ValueError):
    """Branching number must lie strictly between 1 and 2 for this formula."""


class RatioOutOfRange(DensatError, ValueError):
    """A parameter ratio is outside its admissible open interval."""


class DomainError(DensatError, ValueError):
    """Numeric argument outside the function's domain."""


class Infeasible(DensatError):
    """The linear program has no feasible point."""


class Unbounded(DensatError):
    """The linear program's objective is unbounded above."""
