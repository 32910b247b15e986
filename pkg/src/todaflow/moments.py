"""Power moments of discrete measures and inverse spectral reconstruction.

s_k = integral of lambda^k against the measure.  A real sequence consists
of moments of a positive measure exactly when the Hankel matrices built
from it are positive definite (all of them for infinite support, the
leading ones up to the support size otherwise), and the leading N x N
Jacobi block is recoverable from s_0..s_{2N-1}: either by orthogonalizing
1, lambda, lambda^2, ... directly against the measure (Stieltjes/Lanczos)
or by Cholesky factorization of the Hankel matrix.  The first route is the
robust one; the Hankel route loses accuracy exponentially with N and is
kept for moment-only inputs.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DegenerateMeasureError, PositivityError
from .jacobi import DiscreteMeasure, JacobiMatrix, _readonly

__all__ = [
    "MomentSequence",
    "MomentClassification",
    "POSITIVE_DEFINITE",
    "FINITE_SUPPORT",
    "INVALID",
    "moments_from_measure",
    "hankel_matrix",
    "check_moment_positivity",
    "jacobi_from_measure",
    "jacobi_from_moments",
    "moment_bilinear_form",
]

POSITIVE_DEFINITE = "positive_definite"
FINITE_SUPPORT = "finite_support"
INVALID = "invalid"

# Relative pivot threshold separating genuine Hankel rank deficiency from
# roundoff at desk scale.
_ZERO_PIVOT_REL = 1e-10

_DEGENERATE_NORM = 1e-12

_CONDITION_WARN = 1e12


@dataclass(frozen=True)
class MomentSequence:
    """Moments s_0..s_{K-1}, tagged with the flow time they belong to."""

    values: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        v = _readonly(self.values)
        if v.ndim != 1 or v.size < 1:
            raise ValueError("values must be a 1-d sequence with at least one entry")
        if not np.all(np.isfinite(v)):
            raise ValueError("moments must be finite")
        if v[0] <= 0.0:
            raise ValueError("s_0 must be positive")
        if not (self.time >= 0.0):
            raise ValueError("time must be >= 0")
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "time", float(self.time))

    def __len__(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class MomentClassification:
    """Outcome of the Hankel positivity test.

    kind is one of POSITIVE_DEFINITE, FINITE_SUPPORT, INVALID; order holds
    the largest certified Hankel size, the support size, or the first
    failing size respectively.
    """

    kind: str
    order: int


def _power_terms(nodes: np.ndarray, weights: np.ndarray, count: int) -> np.ndarray:
    # Row k holds nodes**k * weights; finite-ness of every term is the
    # overflow guard demanded of moment accumulation.
    with np.errstate(over="ignore"):
        powers = np.vander(nodes, count, increasing=True).T
        terms = powers * weights
    if not np.all(np.isfinite(terms)):
        raise OverflowError(
            f"|node|^k * weight left the double-precision range before k={count}"
        )
    return terms


def moments_from_measure(mu: DiscreteMeasure, count: int, *, time: float = 0.0) -> MomentSequence:
    """First `count` moments of mu, each accumulated by compensated summation.

    values[k] = sum_j nodes[j]**k * weights[j], k = 0..count-1.

    Raises OverflowError if any term exceeds the floating-point range.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    terms = _power_terms(mu.nodes, mu.weights, count)
    vals = np.array([math.fsum(row) for row in terms])
    return MomentSequence(values=vals, time=time)


def hankel_matrix(s: MomentSequence, size: int) -> np.ndarray:
    """Dense size x size Hankel matrix with entries s_{i+j} (0-based)."""
    if size < 1:
        raise ValueError("size must be >= 1")
    if len(s) < 2 * size - 1:
        raise ValueError(
            f"need {2 * size - 1} moments for a {size}x{size} Hankel matrix, have {len(s)}"
        )
    v = s.values
    return scipy.linalg.hankel(v[:size], v[size - 1 : 2 * size - 1])


def check_moment_positivity(s: MomentSequence) -> MomentClassification:
    """Classify a moment sequence by Cholesky pivots of its Hankel matrices.

    Factorizes the largest Hankel matrix the sequence supports.  The i-th
    pivot is det S_i / det S_{i-1}: all pivots positive certifies positive
    definiteness up to the largest testable size; a pivot below
    -1e-10 * ||S|| marks an impossible sequence.  A pivot within
    1e-10 * ||S|| of zero marks candidate finite support of size i-1 --
    confirmed only if the factorization residual vanishes from there on
    (zero pivot with a nonzero residual row, or a later nonzero pivot,
    means the matrix is indefinite and the sequence invalid, e.g.
    [1, 0, 0, 0, 1]).
    """
    t_max = (len(s) + 1) // 2
    h = hankel_matrix(s, t_max)
    thresh = _ZERO_PIVOT_REL * float(np.linalg.norm(h))
    r = np.zeros((t_max, t_max))
    support = None
    for i in range(t_max):
        pivot = h[i, i] - float(r[:i, i] @ r[:i, i])
        row = h[i, i + 1 :] - r[:i, i] @ r[:i, i + 1 :]
        if support is None:
            if pivot < -thresh:
                return MomentClassification(kind=INVALID, order=i + 1)
            if pivot <= thresh:
                if row.size and np.max(np.abs(row)) > thresh:
                    return MomentClassification(kind=INVALID, order=i + 1)
                support = i
            else:
                r[i, i] = math.sqrt(pivot)
                r[i, i + 1 :] = row / r[i, i]
        elif abs(pivot) > thresh or (row.size and np.max(np.abs(row)) > thresh):
            return MomentClassification(kind=INVALID, order=i + 1)
    if support is not None:
        return MomentClassification(kind=FINITE_SUPPORT, order=support)
    return MomentClassification(kind=POSITIVE_DEFINITE, order=t_max)


def jacobi_from_measure(mu: DiscreteMeasure, n: int) -> JacobiMatrix:
    """Jacobi matrix whose spectral measure reproduces mu's moments through s_{2n-1}.

    Stieltjes/Lanczos procedure: orthonormalize 1, lambda, lambda^2, ...
    in L^2(mu) -- a finite weighted sum over the nodes, exact for discrete
    measures -- and read the three-term recurrence off the sequence.
    Diagonal entries are the recurrence centers, off-diagonal entries the
    (positive) norms.  When mu has exactly n nodes this inverts
    eigendecompose.  Vectors are reorthogonalized twice per step, which
    keeps the round trip at roundoff level for desk-scale n.

    Raises
    ------
    DegenerateMeasureError
        If an intermediate norm drops below 1e-12 before n coefficients
        are produced (mu is numerically supported on fewer than n points).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if mu.nodes.size < n:
        raise ValueError(f"measure has {mu.nodes.size} nodes, fewer than n={n}")
    x = mu.nodes
    w = mu.weights
    diag = np.empty(n)
    offdiag = np.empty(n - 1) if n > 1 else np.empty(0)
    basis = np.zeros((n, x.size))
    q = np.ones_like(x) / math.sqrt(math.fsum(w))
    basis[0] = q
    q_prev = np.zeros_like(x)
    beta = 0.0
    for k in range(n):
        xq = x * q
        diag[k] = math.fsum(xq * q * w)
        if k == n - 1:
            break
        resid = xq - diag[k] * q - beta * q_prev
        for _ in range(2):
            resid -= basis[: k + 1].T @ (basis[: k + 1] @ (resid * w))
        norm = math.sqrt(max(math.fsum(resid * resid * w), 0.0))
        if norm < _DEGENERATE_NORM:
            raise DegenerateMeasureError(
                f"orthogonalization norm {norm:.3e} below 1e-12 at step {k + 1}; "
                f"measure is numerically supported on fewer than {n} points"
            )
        offdiag[k] = norm
        q_prev = q
        q = resid / norm
        basis[k + 1] = q
        beta = norm
    return JacobiMatrix(diag=diag, offdiag=offdiag)


def jacobi_from_moments(s: MomentSequence, n: int) -> JacobiMatrix:
    """n x n Jacobi block recovered from moments s_0..s_{2n-1} alone.

    Factorizes the bordered n x (n+1) Hankel block [s_{i+j}] as R^T R with
    R upper triangular; the recurrence coefficients are entry ratios:

        a_k = R[k+1, k+1] / R[k, k]
        b_k = R[k, k+1] / R[k, k] - R[k-1, k] / R[k-1, k-1]

    Agrees with jacobi_from_measure when the moments come from a measure,
    but the Hankel condition number grows exponentially with n, so expect
    full accuracy only for n up to about 8 in double precision.

    Raises PositivityError on a nonpositive pivot; warns if the Hankel
    condition estimate exceeds 1e12.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if len(s) < 2 * n:
        raise ValueError(
            f"need 2n={2 * n} moments (the last diagonal entry requires s_{2 * n - 1}), have {len(s)}"
        )
    cond = float(np.linalg.cond(hankel_matrix(s, n)))
    if cond > _CONDITION_WARN:
        warnings.warn(
            f"Hankel matrix condition {cond:.3e} exceeds 1e12; "
            "reconstructed entries may be meaningless",
            stacklevel=2,
        )
    v = s.values
    h = np.empty((n, n + 1))
    for i in range(n):
        h[i] = v[i : i + n + 1]
    r = np.zeros((n, n + 1))
    for i in range(n):
        pivot = h[i, i] - float(r[:i, i] @ r[:i, i])
        if pivot <= 0.0:
            raise PositivityError(
                f"Hankel pivot {i + 1} is nonpositive ({pivot:.3e}); the sequence is "
                f"not positive definite through order {n}"
            )
        r[i, i] = math.sqrt(pivot)
        r[i, i + 1 :] = (h[i, i + 1 :] - r[:i, i] @ r[:i, i + 1 :]) / r[i, i]
    diag = np.empty(n)
    diag[0] = r[0, 1] / r[0, 0]
    for k in range(1, n):
        diag[k] = r[k, k + 1] / r[k, k] - r[k - 1, k] / r[k - 1, k - 1]
    offdiag = np.array([r[k + 1, k + 1] / r[k, k] for k in range(n - 1)])
    return JacobiMatrix(diag=diag, offdiag=offdiag)


def moment_bilinear_form(s: MomentSequence, f, g) -> float:
    """<F, G> = sum_{n,m} s_{n+m} f_n g_m for monomial-basis coefficients."""
    f = np.atleast_1d(np.asarray(f, dtype=float))
    g = np.atleast_1d(np.asarray(g, dtype=float))
    size = max(f.size, g.size)
    if len(s) < 2 * size - 1:
        raise ValueError(
            f"need {2 * size - 1} moments for degree-{size - 1} polynomials, have {len(s)}"
        )
    fp = np.zeros(size)
    fp[: f.size] = f
    gp = np.zeros(size)
    gp[: g.size] = g
    return float(fp @ hankel_matrix(s, size) @ gp)
