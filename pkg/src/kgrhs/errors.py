"""Exception types shared across the package."""


class KGRHSError(Exception):
    """Base class for all domain errors raised by this package."""


class NoRealRoot(KGRHSError):
    """No real scaling parameter solves the constraint system.

    Signals non-existence of a solution for the given potential
    configuration, not a numerical failure.
    """


class BelowRest(KGRHSError):
    """Incident energy below the rest energy: no propagating incident wave."""


class StencilOverflow(KGRHSError):
    """Exponential growth pushed stencil samples out of floating-point range."""


class NoisePlateau(KGRHSError):
    """Residuals sit on the machine-precision floor for every step size.

    Raised by convergence studies when there is no truncation error left to
    measure; callers should treat it as a pass (the solution is exact).
    """

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals


class DegenerateDenominator(KGRHSError):
    """Incident exponent is not propagating (Q = Q†)."""


class NonUnitaryPhase(KGRHSError):
    """Boundary phase quaternion does not have unit norm."""


class NotSpecifiedByPaper(KGRHSError):
    """Requested operation has no defined construction in this model.

    Used for the full quaternionic scattering amplitude solve, which is
    deliberately not implemented; only the boundary-condition check and the
    mass-shift comparison are defined.
    """


class PreconditionError(KGRHSError):
    """Documented precondition of an operation was violated."""


class CaseMismatch(KGRHSError):
    """Inputs belong to a different equation case than the operation handles."""
