"""Exception types shared across the package."""


class TruncationError(RuntimeError):
    """A sampled wavefunction has not decayed at the grid edges.

    Raised when the finite window would silently corrupt a transform
    (Wigner quadrature, momentum transform, or free propagation).
    """


class ConventionViolationError(RuntimeError):
    """A quantity that must be real/non-negative by construction is not.

    This signals a kernel-sign or normalization bug, not a tolerance issue.
    """


class AnalysisError(RuntimeError):
    """Fringe analysis could not produce a meaningful result."""
