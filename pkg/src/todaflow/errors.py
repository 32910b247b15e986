"""Exception types shared across the library.

ValueError is reserved for bad arguments and violated preconditions;
NumericalError subclasses signal breakdowns detected while computing.
The CLI maps the former to exit code 1 and the latter to exit code 2.
"""


class NumericalError(RuntimeError):
    """Base class for runtime numerical failures (as opposed to bad input)."""


class EigenConvergenceError(NumericalError):
    """Tridiagonal eigen-iteration did not converge, or the computed
    spectrum is not numerically simple."""


class PoleProximityError(NumericalError):
    """Evaluation point too close to the spectrum for a resolvent quantity."""


class DegenerateMeasureError(NumericalError):
    """Orthogonalization broke down: the measure is numerically supported
    on fewer points than the requested matrix size."""


class PositivityError(NumericalError):
    """A Hankel pivot that must be positive is not."""


class BlowUpError(NumericalError):
    """Direct ODE integration left the trusted region."""
