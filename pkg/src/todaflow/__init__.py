"""Toda lattice solutions through the evolution of spectral data.

The lattice state is a Jacobi matrix; its spectral measure evolves by an
explicit exponential reweighting of the spectral weights while the
eigenvalues stand still.  Solving the lattice therefore reduces to one
eigendecomposition, a closed-form weight update per time, and an inverse
spectral reconstruction per time -- no ODE integration.  A fixed-step
RK4 integrator of the lattice equations is included as an independent
cross-check, a Chebyshev dictionary links moments to boundary-control
response vectors, and a truncation-and-stabilize driver extends the
method to semi-infinite initial data bounded above in spectrum.
"""

from .errors import (
    BlowUpError,
    DegenerateMeasureError,
    EigenConvergenceError,
    NumericalError,
    PoleProximityError,
    PositivityError,
)
from .flow import (
    DIRECT_ODE,
    MOMENT_METHOD,
    TodaTrajectory,
    evolve_moments,
    log_omega,
    moment_recurrence_residual,
    moser_evolve,
    solve_toda_finite,
    weyl_evolution_residual,
)
from .jacobi import (
    DiscreteMeasure,
    JacobiMatrix,
    b1_from_measure,
    eigendecompose,
    weyl_function,
)
from .moments import (
    FINITE_SUPPORT,
    INVALID,
    POSITIVE_DEFINITE,
    MomentClassification,
    MomentSequence,
    check_moment_positivity,
    hankel_matrix,
    jacobi_from_measure,
    jacobi_from_moments,
    moment_bilinear_form,
    moments_from_measure,
)
from .oracle import compare_trajectories, rk4_toda
from .response import (
    ResponseVector,
    chebyshev_u,
    lambda_matrix,
    response_from_measure,
    response_from_moments,
)
from .semi_infinite import (
    SemiInfiniteInitialData,
    StabilizationReport,
    make_initial_data,
    solve_toda_semi_infinite,
)

__version__ = "0.1.0"

__all__ = [
    "BlowUpError",
    "DegenerateMeasureError",
    "EigenConvergenceError",
    "NumericalError",
    "PoleProximityError",
    "PositivityError",
    "DIRECT_ODE",
    "MOMENT_METHOD",
    "TodaTrajectory",
    "evolve_moments",
    "log_omega",
    "moment_recurrence_residual",
    "moser_evolve",
    "solve_toda_finite",
    "weyl_evolution_residual",
    "DiscreteMeasure",
    "JacobiMatrix",
    "b1_from_measure",
    "eigendecompose",
    "weyl_function",
    "FINITE_SUPPORT",
    "INVALID",
    "POSITIVE_DEFINITE",
    "MomentClassification",
    "MomentSequence",
    "check_moment_positivity",
    "hankel_matrix",
    "jacobi_from_measure",
    "jacobi_from_moments",
    "moment_bilinear_form",
    "moments_from_measure",
    "compare_trajectories",
    "rk4_toda",
    "ResponseVector",
    "chebyshev_u",
    "lambda_matrix",
    "response_from_measure",
    "response_from_moments",
    "SemiInfiniteInitialData",
    "StabilizationReport",
    "make_initial_data",
    "solve_toda_semi_infinite",
]
