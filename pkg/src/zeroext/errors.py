"""Exception hierarchy shared by all zeroext modules."""


class ZeroExtError(Exception):
    """Base class for every error raised by this package."""


class AxiomViolation(ZeroExtError):
    """A candidate distance matrix fails one of the metric axioms.

    kind is one of "identity", "symmetry", "triangle"; witness is the
    offending label tuple.
    """

    def __init__(self, kind, witness):
        self.kind = kind
        self.witness = tuple(witness)
        super().__init__(f"metric axiom '{kind}' violated at {self.witness}")


class UnknownLabel(ZeroExtError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"unknown label {label!r}")


class PathMetricMismatch(ZeroExtError):
    """The minimal graph of a metric does not reproduce the metric.

    Impossible for a true metric; raised to surface internal inconsistency.
    """


class GraphStructureError(ZeroExtError):
    """Malformed weighted graph (disconnected, bad weight, bad endpoint)."""


class CyclicOrientation(ZeroExtError):
    """An edge orientation that was supposed to be acyclic has a cycle."""


class InadmissibleRelation(ZeroExtError):
    """A candidate companion relation violates one of its closure rules."""

    def __init__(self, condition, witness):
        self.condition = condition
        self.witness = tuple(witness)
        super().__init__(f"relation condition {condition} violated at {self.witness}")


class NotGated(ZeroExtError):
    """A convex set unexpectedly has no unique gate for some point."""


class NotMeetSemilattice(ZeroExtError):
    """Poset is not a meet-semilattice (or not even a poset)."""


class NotModularSemilattice(ZeroExtError):
    def __init__(self, witness, message=""):
        self.witness = tuple(witness)
        super().__init__(message or f"modularity violated at {self.witness}")


class BadValuation(ZeroExtError):
    def __init__(self, witness, message=""):
        self.witness = tuple(witness)
        super().__init__(message or f"valuation violated at {self.witness}")


class NotInInterval(ZeroExtError):
    """Element is outside the metric interval it was expected in."""


class EmptyDomain(ZeroExtError):
    def __init__(self, variable):
        self.variable = variable
        super().__init__(f"variable {variable} has no finite-cost value left")


class Unbounded(ZeroExtError):
    """LP objective unbounded below; signals a malformed relaxation."""


class TightnessViolated(ZeroExtError):
    """The LP relaxation failed to be tight during minimizer extraction."""


class DomainTooLarge(ZeroExtError):
    def __init__(self, size, limit):
        self.size = size
        self.limit = limit
        super().__init__(f"brute-force space {size} exceeds limit {limit}")


class InfeasibleStart(ZeroExtError):
    """No feasible starting assignment exists (or the given one is infeasible)."""


class NonTermination(ZeroExtError):
    """An iteration guard tripped; signals a bug, not a user error."""


class InternalInconsistency(ZeroExtError):
    """A structural fact that must hold failed to hold; signals a bug."""


class ParseError(ZeroExtError):
    def __init__(self, line, column, message):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class SemanticError(ZeroExtError):
    """Structurally valid input with inconsistent content."""
