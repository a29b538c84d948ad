"""Error taxonomy shared across the package.

Refusals (violated preconditions, caps, degenerate inputs) raise
:class:`PreconditionError`; numeric failures that should never be silently
returned (quadrature non-convergence, series truncation overflow) raise a
:class:`NonConvergenceError` subclass.  The CLI maps the former to exit code
2 and the latter to exit code 3.
"""


class PreconditionError(ValueError):
    """An operation was asked to run outside its stated domain."""


class NonConvergenceError(RuntimeError):
    """A numerical routine could not certify the requested accuracy."""


class QuadratureError(NonConvergenceError):
    """Adaptive quadrature exhausted its budget above tolerance."""

    def __init__(self, message, value=None, error_estimate=None):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate


class SeriesTruncationError(NonConvergenceError):
    """An infinite series/product could not be truncated within its cap."""
