"""Hot numeric kernels with a numba fast path and a pure-numpy fallback.

The numba path is used when numba imports cleanly; set the environment
variable QUTRIT_DEPHASING_NO_NUMBA=1 before import to force the numpy
fallback (the benchmark under benchmarks/ times both).  Both paths implement
identical arithmetic; tests assert they agree to 1e-13.

Kernels:

- average_propagated(phis, rho0): mean over paths of U(phi) rho0 U(phi)+,
  the Monte-Carlo ensemble average.  Accumulation is compensated (Kahan) in
  the numba path and pairwise (np.mean) in the numpy path, so the reduction
  is insensitive to summation order at the 1e-14 level.
- phases_trapezoid(paths, t_grid, omega): cumulative trapezoid integral of
  omega * eta along the grid for every sampled path.
"""

from __future__ import annotations

import os

import numpy as np

_SQRT2 = np.sqrt(2.0)

_DISABLED = os.environ.get("QUTRIT_DEPHASING_NO_NUMBA", "") not in ("", "0")

if not _DISABLED:
    try:
        from numba import njit

        USING_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        USING_NUMBA = False
else:
    USING_NUMBA = False


def _average_propagated_numpy(phis: np.ndarray, rho0: np.ndarray) -> np.ndarray:
    c = np.cos(phis)
    s = np.sin(phis)
    half = np.cos(0.5 * phis) ** 2
    off = -1j * s / _SQRT2
    corner = 0.5 * (c - 1.0)
    u = np.empty((phis.size, 3, 3), dtype=np.complex128)
    u[:, 0, 0] = u[:, 2, 2] = half
    u[:, 0, 2] = u[:, 2, 0] = corner
    u[:, 1, 1] = c
    u[:, 0, 1] = u[:, 1, 0] = u[:, 1, 2] = u[:, 2, 1] = off
    evolved = np.einsum("nij,jk,nlk->nil", u, rho0, u.conj())
    return evolved.mean(axis=0)


def _phases_trapezoid_numpy(
    paths: np.ndarray, t_grid: np.ndarray, omega: float
) -> np.ndarray:
    dt = np.diff(t_grid)
    increments = 0.5 * dt * (paths[:, 1:] + paths[:, :-1])
    phases = np.zeros_like(paths)
    np.cumsum(increments, axis=1, out=phases[:, 1:])
    return omega * phases


if USING_NUMBA:

    @njit(cache=True)
    def _average_propagated_numba(phis, rho0):  # pragma: no cover - jitted
        acc = np.zeros((3, 3), dtype=np.complex128)
        comp = np.zeros((3, 3), dtype=np.complex128)
        u = np.empty((3, 3), dtype=np.complex128)
        left = np.empty((3, 3), dtype=np.complex128)
        for idx in range(phis.size):
            phi = phis[idx]
            c = np.cos(phi)
            s = np.sin(phi)
            half = np.cos(0.5 * phi) ** 2
            off = -1j * s / _SQRT2
            corner = 0.5 * (c - 1.0)
            u[0, 0] = half
            u[0, 1] = off
            u[0, 2] = corner
            u[1, 0] = off
            u[1, 1] = c
            u[1, 2] = off
            u[2, 0] = corner
            u[2, 1] = off
            u[2, 2] = half
            for i in range(3):
                for j in range(3):
                    value = complex(0.0)
                    for k in range(3):
                        value += u[i, k] * rho0[k, j]
                    left[i, j] = value
            for i in range(3):
                for j in range(3):
                    value = complex(0.0)
                    for k in range(3):
                        value += left[i, k] * np.conj(u[j, k])
                    # Kahan step keeps the reduction order-insensitive.
                    y = value - comp[i, j]
                    t = acc[i, j] + y
                    comp[i, j] = (t - acc[i, j]) - y
                    acc[i, j] = t
        return acc / phis.size

    @njit(cache=True)
    def _phases_trapezoid_numba(paths, t_grid, omega):  # pragma: no cover - jitted
        n, m = paths.shape
        phases = np.zeros((n, m), dtype=np.float64)
        for i in range(n):
            total = 0.0
            for j in range(1, m):
                total += 0.5 * (t_grid[j] - t_grid[j - 1]) * (
                    paths[i, j] + paths[i, j - 1]
                )
                phases[i, j] = omega * total
        return phases


def average_propagated(phis: np.ndarray, rho0: np.ndarray) -> np.ndarray:
    """Mean of U(phi) rho0 U(phi)+ over an array of phases."""
    phis = np.ascontiguousarray(phis, dtype=np.float64)
    rho0 = np.ascontiguousarray(rho0, dtype=np.complex128)
    if USING_NUMBA:
        return _average_propagated_numba(phis, rho0)
    return _average_propagated_numpy(phis, rho0)


def phases_trapezoid(paths: np.ndarray, t_grid: np.ndarray, omega: float) -> np.ndarray:
    """Cumulative trapezoid integral of omega * eta for each row of paths."""
    paths = np.ascontiguousarray(paths, dtype=np.float64)
    t_grid = np.ascontiguousarray(t_grid, dtype=np.float64)
    if USING_NUMBA:
        return _phases_trapezoid_numba(paths, t_grid, float(omega))
    return _phases_trapezoid_numpy(paths, t_grid, float(omega))
