"""Exception hierarchy.

Every error names the hypothesis it reports on, so callers (and the CLI
exit-status mapping) can tell a bad argument from a space on which the
operator is not defined.
"""


class BandspecError(Exception):
    """Base class for all package errors."""


class ValidationError(BandspecError, ValueError):
    """An argument violates a type invariant (r = 0, p out of range, ...)."""


class ContinuityFailure(BandspecError):
    """The weight ratio v_{n+1}/v_n is unbounded, so B(r,s) is not continuous."""


class UnboundedRatio(ContinuityFailure):
    """Raised by ratio_asymptotics when sup v_{n+1}/v_n is infinite."""


class DeclaredMismatch(ValidationError):
    """A tabulated weight disagrees with its declared ratio asymptotics."""


class HypothesisFailure(BandspecError):
    """A hypothesis on the exponent sequence alpha is not met."""


class SpectrumViolation(BandspecError):
    """The requested point lies in the spectrum, so the resolvent is not defined."""


class AggregationViolation(BandspecError):
    """Per-grade spectra contradict the projective/inductive aggregation inclusion.

    This signals an implementation bug, not a mathematical failure.
    """


class InvariantViolation(BandspecError):
    """An internal consistency check failed."""
