"""Exception hierarchy.

Input and precondition problems are the caller's fault; ``TheoremViolation``
means a proven correspondence failed on concrete data and always indicates a
bug (or falsified mathematics), never bad input.
"""


class NordenError(Exception):
    """Base class for all errors raised by this package."""


class InputError(NordenError, ValueError):
    """Malformed or dimensionally inconsistent input."""


class StructureError(InputError):
    """The almost complex structure does not square to minus the identity."""


class MetricError(InputError):
    """The metric is not symmetric, or J is not an anti-isometry for it."""


class PreconditionError(NordenError):
    """An operation was called outside its domain (e.g. split a nondegenerate subspace)."""


class TheoremViolation(NordenError, AssertionError):
    """A proven equivalence or identity failed on exact data."""
