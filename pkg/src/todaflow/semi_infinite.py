"""Semi-infinite Toda data solved by growing finite truncations.

When the initial operator is bounded above, its truncated spectral
measures converge and the leading lattice entries stabilize as the
truncation grows; the solver doubles the truncation size until the
first m entries stop moving (below a requested tolerance) on the whole
time grid.  Convergence is detected empirically and reported, never
assumed: data without an upper spectral bound shows up as eigenvalue
maxima escaping upward and a report flagged non-converged.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .flow import TodaTrajectory, evolve_moments, solve_toda_finite, _check_grid
from .jacobi import JacobiMatrix, eigendecompose

__all__ = [
    "SemiInfiniteInitialData",
    "StabilizationReport",
    "make_initial_data",
    "solve_toda_semi_infinite",
]

_BOUND_SLACK = 1e-6


@dataclass(frozen=True)
class SemiInfiniteInitialData:
    """Initial lattice data (a_n, b_n) for every n >= 1, plus an optional
    a-priori upper bound on the limiting spectral support.

    coefficients(n) must return the pair (a_n, b_n) with a_n > 0 for any
    n >= 1 it is asked for.
    """

    coefficients: Callable[[int], tuple[float, float]]
    declared_upper_bound: Optional[float] = None

    def truncation(self, n: int) -> JacobiMatrix:
        """Leading n x n Jacobi block of the initial operator."""
        if n < 1:
            raise ValueError("n must be >= 1")
        pairs = [self.coefficients(k) for k in range(1, n + 1)]
        a_all = np.array([p[0] for p in pairs], dtype=float)
        b = np.array([p[1] for p in pairs], dtype=float)
        if np.min(a_all) <= 0.0:
            raise ValueError("generated a_n entries must be strictly positive")
        return JacobiMatrix(diag=b, offdiag=a_all[: n - 1])


def _linear_b(alpha: float, beta: float, gamma: float):
    return lambda n: (alpha, beta * n + gamma)


def _constant(alpha: float, gamma: float):
    return lambda n: (alpha, gamma)


def _decay(alpha: float, gamma: float):
    return lambda n: (alpha / n, gamma)


def _table(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.size != b.size - 1 and a.size != b.size:
        raise ValueError("table needs len(a) in {len(b)-1, len(b)}")

    def coeff(n: int) -> tuple[float, float]:
        if n > b.size:
            raise ValueError(
                f"table initial data exhausted at n={n}; provide more entries or lower N_max"
            )
        if n <= a.size:
            return (float(a[n - 1]), float(b[n - 1]))
        # n == len(b) with len(a) == len(b)-1: this a_n lies outside every
        # truncated block, so any positive placeholder works
        return (1.0, float(b[n - 1]))

    return coeff


def make_initial_data(name: str, params: Optional[dict] = None) -> SemiInfiniteInitialData:
    """Named built-in generators for initial data.

    "linear_b":  b_n = beta * n + gamma, a_n = alpha
    "constant":  b_n = gamma,            a_n = alpha
    "decay":     b_n = gamma,            a_n = alpha / n
    "table":     explicit finite arrays a, b

    params may also carry "upper_bound" to declare the spectral bound.
    Defaults: alpha = 1.0, beta = 0.0, gamma = 0.0.
    """
    params = dict(params or {})
    bound = params.pop("upper_bound", None)
    alpha = float(params.pop("alpha", 1.0))
    beta = float(params.pop("beta", 0.0))
    gamma = float(params.pop("gamma", 0.0))
    if name == "linear_b":
        coeff = _linear_b(alpha, beta, gamma)
    elif name == "constant":
        coeff = _constant(alpha, gamma)
    elif name == "decay":
        coeff = _decay(alpha, gamma)
    elif name == "table":
        coeff = _table(params.pop("a"), params.pop("b"))
    else:
        raise ValueError(f"unknown initial-data generator {name!r}")
    if params:
        raise ValueError(f"unused generator parameters: {sorted(params)}")
    return SemiInfiniteInitialData(
        coefficients=coeff,
        declared_upper_bound=None if bound is None else float(bound),
    )


@dataclass(frozen=True)
class StabilizationReport:
    """Everything observed while refining the truncation.

    diag_history / offdiag_history hold, per truncation size, the
    (n_times, m) trajectories of the requested leading entries;
    deviations[i] is the max-norm change between sizes i and i+1.
    moments holds s_0..s_{2m-1} per grid time from the largest truncation
    (the finite stand-in for the limiting moments).  achieved is the last
    deviation (inf when only one size ran).
    """

    entries: int
    times: np.ndarray
    truncation_sizes: tuple[int, ...]
    deviations: tuple[float, ...]
    converged: bool
    achieved: float
    diag_history: tuple[np.ndarray, ...]
    offdiag_history: tuple[np.ndarray, ...]
    spectral_maxima: tuple[float, ...]
    moments: np.ndarray

    def to_dict(self) -> dict:
        """JSON-ready representation (achieved = null when only one size ran)."""
        return {
            "entries": self.entries,
            "times": self.times.tolist(),
            "truncation_sizes": list(self.truncation_sizes),
            "deviations": list(self.deviations),
            "converged": self.converged,
            "achieved": self.achieved if math.isfinite(self.achieved) else None,
            "diag_history": [h.tolist() for h in self.diag_history],
            "offdiag_history": [h.tolist() for h in self.offdiag_history],
            "spectral_maxima": list(self.spectral_maxima),
            "moments": self.moments.tolist(),
        }


def _schedule(start: int, n_max: int) -> list[int]:
    if start > n_max:
        return [n_max]
    sizes = []
    n = start
    while n <= n_max:
        sizes.append(n)
        n *= 2
    return sizes


def solve_toda_semi_infinite(
    init: SemiInfiniteInitialData,
    times,
    m: int,
    tol: float,
    n_max: int,
) -> tuple[TodaTrajectory, StabilizationReport]:
    """Doubling-truncation solve of the semi-infinite lattice.

    Runs the finite moment-method solver at sizes N1, 2 N1, 4 N1, ...
    (N1 = max(2m+2, 8), capped at n_max) and stops once the first m
    entries of both coefficient families move by less than tol, in max
    norm over the whole grid, between consecutive sizes.  Returns the
    last trajectory windowed to its leading m x m block together with the
    full refinement report.  Non-convergence is reported, not raised;
    eigenvalues above a declared spectral bound raise a warning.
    """
    times = _check_grid(times)
    if m < 1:
        raise ValueError("m must be >= 1")
    if not (tol > 0.0):
        raise ValueError("tol must be positive")
    if n_max < 2 * m + 2:
        raise ValueError(f"n_max must be >= 2m+2 = {2 * m + 2}")

    sizes_run: list[int] = []
    deviations: list[float] = []
    diag_hist: list[np.ndarray] = []
    offdiag_hist: list[np.ndarray] = []
    spectral_maxima: list[float] = []
    converged = False
    last_traj: Optional[TodaTrajectory] = None
    last_mu0 = None

    for n in _schedule(max(2 * m + 2, 8), n_max):
        block = init.truncation(n)
        mu0 = eigendecompose(block)
        top = float(mu0.nodes[-1])
        spectral_maxima.append(top)
        if init.declared_upper_bound is not None and top > init.declared_upper_bound + _BOUND_SLACK:
            warnings.warn(
                f"truncation N={n} has eigenvalue {top:.6g} above the declared "
                f"upper bound {init.declared_upper_bound:g}",
                stacklevel=2,
            )
        traj = solve_toda_finite(block, times)
        diag_hist.append(traj.diag_array()[:, :m])
        offdiag_hist.append(traj.offdiag_array()[:, :m])
        sizes_run.append(n)
        last_traj = traj
        last_mu0 = mu0
        if len(sizes_run) > 1:
            dev = max(
                float(np.max(np.abs(diag_hist[-1] - diag_hist[-2]))),
                float(np.max(np.abs(offdiag_hist[-1] - offdiag_hist[-2]))),
            )
            deviations.append(dev)
            if dev < tol:
                converged = True
                break

    moments = np.array([evolve_moments(last_mu0, t, 2 * m).values for t in times])
    report = StabilizationReport(
        entries=m,
        times=times.copy(),
        truncation_sizes=tuple(sizes_run),
        deviations=tuple(deviations),
        converged=converged,
        achieved=deviations[-1] if deviations else math.inf,
        diag_history=tuple(diag_hist),
        offdiag_history=tuple(offdiag_hist),
        spectral_maxima=tuple(spectral_maxima),
        moments=moments,
    )
    window = tuple(
        JacobiMatrix(diag=state.diag[:m], offdiag=state.offdiag[: m - 1])
        for state in last_traj.states
    )
    truncated = TodaTrajectory(times=times, states=window, method=last_traj.method)
    return truncated, report
