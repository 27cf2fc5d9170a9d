"""Exception hierarchy shared by all metriclat modules."""


class MetricLatError(Exception):
    """Base class for every error raised by this package."""


class AxiomViolation(MetricLatError):
    """A lattice or metric axiom failed during construction.

    ``kind`` names the axiom, ``witness`` is a tuple of element labels
    (or indices) realizing the failure.
    """

    def __init__(self, kind, witness, detail=""):
        self.kind = kind
        self.witness = witness
        msg = f"axiom violation: {kind} at {witness!r}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class MeetUndefined(MetricLatError):
    """Two elements lack a unique greatest lower bound."""

    def __init__(self, x, y):
        self.pair = (x, y)
        super().__init__(f"no unique greatest lower bound for {x!r}, {y!r}")


class ParseError(MetricLatError):
    """Malformed textual input (formula or partition syntax)."""

    def __init__(self, message, position=None, expected=None):
        self.position = position
        self.expected = expected
        if position is not None:
            message = f"{message} at position {position}"
        if expected:
            message = f"{message} (expected {expected})"
        super().__init__(message)


class NotAPartition(MetricLatError):
    """Block text does not describe a partition of {1..n}."""


class DimensionMismatch(MetricLatError):
    """Operands live on ground sets of different sizes."""


class DegenerateLattice(MetricLatError):
    """Metric quantities are undefined (n = 1 gives denominator 0)."""


class SingularInput(MetricLatError):
    """A construction that needs a block of size >= 2 got a singular input."""


class NotCovering(MetricLatError):
    """selector_trim requires x + z = 1."""


class EmptySubset(MetricLatError):
    """restrict() needs a nonempty subset."""


class BadIndexing(MetricLatError):
    """Bjorner-indexed partitions must contain the distinguished element 0."""


class EmptyGroundSet(MetricLatError):
    """Boolean measure lattice over zero points."""


class NotARank(MetricLatError):
    """A set function violates one of the three rank axioms."""

    def __init__(self, axiom, witness):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"rank axiom {axiom} fails at {witness!r}")


class RankZero(MetricLatError):
    """Normalization by r(E) is impossible when r(E) = 0."""


class NotCND(MetricLatError):
    """metric_from_cnd got a kernel that is not conditionally negative definite."""


class MethodDisagreement(MetricLatError):
    """Exact and floating-point classifiers disagree; tolerance failure."""


class DomainUnavailable(MetricLatError):
    """A quantifier domain (e.g. SEL) is empty or unsupported on this model."""


class UnboundVariable(MetricLatError):
    """A formula references a variable that is not in scope."""

    def __init__(self, name):
        self.name = name
        super().__init__(f"unbound variable {name!r}")


class NotPrenex(MetricLatError):
    """prenex_classify needs a quantifier prefix over a quantifier-free body."""


class UnknownCheck(MetricLatError):
    """Check id not present in the verification registry."""


class BudgetExceeded(MetricLatError):
    """An exhaustive sweep would exceed the configured instance cap."""

    def __init__(self, check_id, needed, cap):
        self.check_id = check_id
        self.needed = needed
        self.cap = cap
        super().__init__(
            f"{check_id}: sweep needs {needed} instances, cap is {cap}; "
            "raise max_instances or use a sampled mode"
        )
