"""Exception types raised by the library."""


class WvgError(Exception):
    """Base class for all library errors."""


class ParseError(WvgError):
    """Malformed polygon or guard file."""


class TooFewVertices(WvgError):
    pass


class DuplicateConsecutiveVertex(WvgError):
    pass


class NotSimple(WvgError):
    """Polygon boundary self-intersects.

    Carries the indices of a witnessing edge pair when known.
    """

    def __init__(self, message, edge_pair=None):
        super().__init__(message)
        self.edge_pair = edge_pair


class NotAnEdge(WvgError):
    pass


class NotAChord(WvgError):
    pass


class PointOutsidePolygon(WvgError):
    pass


class NotCanonical(WvgError):
    """Operation requires the canonical frame (boundary above the axis)."""


class UncoverableWitness(WvgError):
    """A witness is seen by no candidate; bad candidate restriction or a bug."""


class LimitExceeded(WvgError):
    """Exact cover search exceeded its size limit."""


class BudgetExceeded(WvgError):
    """Brute-force oracle exceeded its work budget (see WVGUARD_BUDGET)."""


class InputNotBoundaryGuarding(WvgError):
    """The supplied guard set does not cover the polygon boundary.

    Carries an unseen boundary witness point.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NoGuardFound(WvgError):
    """No vertex guards a completion triangle; indicates a bug, never expected."""


class InvariantViolation(WvgError):
    """An internal geometric invariant failed; indicates a bug."""


class GenerationFailed(WvgError):
    """Random fixture generation exhausted its rejection budget."""


class InvalidGuard(WvgError):
    """Guard position is not on the polygon boundary or is otherwise unusable."""
