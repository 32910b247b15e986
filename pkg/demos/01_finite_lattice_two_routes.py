#!/usr/bin/env python3
"""Solve a finite Toda lattice two independent ways and compare.

Route 1 (moment method): eigendecompose the initial Jacobi matrix once,
evolve the spectral weights in closed form, reconstruct the matrix at
each output time.  Route 2 (direct): integrate the lattice ODEs with
fixed-step RK4.  The two share no code beyond the matrix type, so their
agreement validates both.
"""

import numpy as np

from todaflow import (
    JacobiMatrix,
    compare_trajectories,
    eigendecompose,
    rk4_toda,
    solve_toda_finite,
)

rng = np.random.default_rng(2024)
n = 6
j0 = JacobiMatrix(diag=rng.uniform(-2, 2, n), offdiag=rng.uniform(0.5, 2, n - 1))
times = np.linspace(0.0, 1.0, 11)

print(f"initial matrix, N={n}")
print("  b:", np.array2string(j0.diag, precision=4))
print("  a:", np.array2string(j0.offdiag, precision=4))

moment = solve_toda_finite(j0, times)
direct = rk4_toda(j0, times, dt=1e-4)
print(f"\nmax |moment - RK4| over the grid: {compare_trajectories(moment, direct):.3e}")

lam0 = eigendecompose(j0).nodes
print("\nconserved quantities along the moment trajectory:")
print(f"{'t':>5} {'trace drift':>12} {'tr H^2 drift':>13} {'eigen drift':>12}")
trace0 = np.sum(j0.diag)
h2_0 = np.sum(j0.diag**2) + 2 * np.sum(j0.offdiag**2)
for t, state in zip(times, moment.states):
    tr = abs(np.sum(state.diag) - trace0)
    h2 = abs(np.sum(state.diag**2) + 2 * np.sum(state.offdiag**2) - h2_0)
    eig = np.max(np.abs(eigendecompose(state).nodes - lam0))
    print(f"{t:5.2f} {tr:12.3e} {h2:13.3e} {eig:12.3e}")

print("\nlong-time behavior: the lattice sorts the spectrum onto the diagonal")
print("(the off-diagonal decays like e^{-2*gap*t}; far beyond t ~ 10 the")
print("evolved measure becomes numerically a point mass and reconstruction")
print("reports degeneracy instead of returning noise)")
far = solve_toda_finite(j0, np.array([0.0, 3.0])).states[-1]
print("  b(3):           ", np.array2string(far.diag, precision=6))
print("  spectrum (desc):", np.array2string(lam0[::-1], precision=6))
print("  a(3):           ", np.array2string(far.offdiag, precision=2))
