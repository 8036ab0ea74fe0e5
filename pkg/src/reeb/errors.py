"""Exception types shared across the library."""


class ReebError(Exception):
    """Base class for all library errors."""


class SchemaError(ReebError):
    """A JSON document or OFF file does not match the expected schema."""


class InvalidComplex(ReebError):
    """A scalar complex failed validation."""


class NonMonotoneArc(ReebError):
    """An arc's endpoints coincide, so the arc cannot be monotone."""


class UnknownNode(ReebError):
    """A node id does not exist in the graph."""


class NonPositiveEpsilon(ReebError):
    """A subdivision step must be strictly positive."""


class NotACycle(ReebError):
    """An arc set has nonzero boundary over Z2."""


class InvalidWitness(ReebError):
    """A discrete map pair's interpolation paths are inconsistent."""


class InvalidPair(ReebError):
    """A feature pair does not belong to the graph it is applied to."""


class BudgetExceeded(ReebError):
    """A brute-force search would exceed its node budget."""


class InfiniteMismatch(ReebError):
    """Two diagrams have different numbers of infinite points."""


class InternalError(ReebError):
    """An internal invariant was violated; indicates a library bug."""
