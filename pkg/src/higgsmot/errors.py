"""Exception hierarchy for higgsmot.

Every failure mode of the library raises a subclass of :class:`HiggsmotError`,
so callers (in particular the command line driver) can map errors to exit
codes without string matching.
"""


class HiggsmotError(Exception):
    """Base class for all higgsmot errors."""


class ZeroDenominatorError(HiggsmotError):
    """A rational class was constructed with denominator zero."""


class NegativeGenusError(HiggsmotError):
    """Curve models require a nonnegative genus."""


class PoleAtArgumentError(HiggsmotError):
    """The zeta function was evaluated at one of its two poles."""


class NonzeroConstantTermError(HiggsmotError):
    """Exp requires a series with vanishing constant term."""


class ConstantTermNotOneError(HiggsmotError):
    """Log and Pow require a series with constant term 1."""


class KeyOffRayError(HiggsmotError):
    """A slope-ray operation received a grading class off the ray."""


class BoxOutsideDiagramError(HiggsmotError):
    """Arm/leg was requested for a box outside the Young diagram."""


class NonInvertibleQError(HiggsmotError):
    """The cleared residue kernel has a non-invertible denominator at z = 0.

    This indicates an internal inconsistency: the construction guarantees
    invertibility, so this error should never escape to users.
    """


class HigherOrderPoleError(HiggsmotError):
    """A simple-pole residue was requested at a pole of order at least two."""


class InsufficientTruncationError(HiggsmotError):
    """A query exceeded the truncation bounds of a precomputed table.

    Carries the bounds that would be required to satisfy the query.
    """

    def __init__(self, message, required_rank=None, required_degree=None):
        super().__init__(message)
        self.required_rank = required_rank
        self.required_degree = required_degree


class StabilizationFailureError(HiggsmotError):
    """Two admissible twists of a semistable class disagreed.

    The twisted classes must agree for consecutive admissible twists; a
    mismatch means an internal consistency violation.
    """


class NonConstantExponentError(HiggsmotError):
    """The flag-degree exponents failed to cancel in the limit identity."""
