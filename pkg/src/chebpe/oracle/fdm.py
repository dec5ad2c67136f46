"""
Second-order finite-difference split-step Pade marcher.

The depth operator is discretized by central differences on N_f + 1
equispaced nodes with Dirichlet (pressure-release) end values, giving
tridiagonal L_j and R_j.  Each step does a tridiagonal product and a
downward-elimination / upward-substitution sweep per Pade term.
Uniform density only.
"""

from dataclasses import dataclass

import numba
import numpy as np

from ..errors import DimensionError, DomainError, InstabilityError
from ..solver import GROWTH_LIMIT, MarchResult, _step_count


@dataclass(frozen=True)
class FdmSystem:
    depths: np.ndarray  # all N_f + 1 nodes including both boundaries
    lower: np.ndarray  # (m-1,) sub/super diagonal of X (symmetric)
    diag: np.ndarray  # (m,) main diagonal of X on interior nodes
    # per Pade term, shape (n, m): R_j bands and the factored L_j
    r_off: np.ndarray
    r_diag: np.ndarray
    l_off: np.ndarray
    l_inv_pivot: np.ndarray
    l_upper: np.ndarray

    @property
    def n_points(self):
        return self.depths.size - 1


def fdm_operator(env, N_f):
    """Interior tridiagonal bands (off, diag) of the FD depth operator."""
    if int(N_f) != N_f or N_f < 2:
        raise DomainError("FDM grid needs at least two intervals")
    if not env.density.is_uniform:
        raise DomainError("FDM baseline supports uniform density only")
    N_f = int(N_f)
    z = np.linspace(0.0, env.depth, N_f + 1)
    h = env.depth / N_f
    k0 = env.k0
    k = env.wavenumber(z[1:-1])
    diag = (-2.0 / h ** 2 + k * k - k0 ** 2) / k0 ** 2
    off = np.full(N_f - 2, 1.0 / (h * k0) ** 2, dtype=complex)
    return z, off, diag.astype(complex)


def build_fdm_system(env, N_f, series):
    z, off, diag = fdm_operator(env, N_f)
    m = diag.size
    n = series.n
    r_off = np.empty((n, max(m - 1, 0)), dtype=complex)
    r_diag = np.empty((n, m), dtype=complex)
    l_off = np.empty((n, max(m - 1, 0)), dtype=complex)
    inv_piv = np.empty((n, m), dtype=complex)
    upper = np.empty((n, max(m - 1, 0)), dtype=complex)
    for j, (a, b) in enumerate(zip(series.alpha, series.beta)):
        r_off[j] = a * off
        r_diag[j] = 1.0 + a * diag
        l_off[j] = b * off
        inv_piv[j], upper[j] = _thomas_factor(1.0 + b * diag, b * off)
    return FdmSystem(z, off, diag, r_off, r_diag, l_off, inv_piv, upper)


def _thomas_factor(d, e):
    """Elimination data for the symmetric tridiagonal (e, d, e)."""
    m = d.size
    inv_piv = np.empty(m, dtype=complex)
    upper = np.empty(max(m - 1, 0), dtype=complex)
    piv = d[0]
    for i in range(m):
        if i > 0:
            piv = d[i] - e[i - 1] * upper[i - 1]
        if piv == 0:
            raise DimensionError(f"zero pivot at row {i} of FDM system")
        inv_piv[i] = 1.0 / piv
        if i < m - 1:
            upper[i] = e[i] * inv_piv[i]
    return inv_piv, upper


@numba.njit(cache=True)
def _march_kernel(out, r_off, r_diag, l_off, inv_piv, upper, phase, limit):
    n_terms, m = r_diag.shape
    rhs = np.empty(m, dtype=np.complex128)
    x = out[0].copy()
    for step in range(1, out.shape[0]):
        for j in range(n_terms):
            # rhs = R_j x
            for i in range(m):
                s = r_diag[j, i] * x[i]
                if i > 0:
                    s += r_off[j, i - 1] * x[i - 1]
                if i < m - 1:
                    s += r_off[j, i] * x[i + 1]
                rhs[i] = s
            # downward elimination
            rhs[0] = rhs[0] * inv_piv[j, 0]
            for i in range(1, m):
                rhs[i] = (rhs[i] - l_off[j, i - 1] * rhs[i - 1]) * inv_piv[j, i]
            # upward substitution
            for i in range(m - 2, -1, -1):
                rhs[i] = rhs[i] - upper[j, i] * rhs[i + 1]
            for i in range(m):
                x[i] = rhs[i]
        nrm = 0.0
        for i in range(m):
            x[i] = phase * x[i]
            nrm += x[i].real * x[i].real + x[i].imag * x[i].imag
        nrm = np.sqrt(nrm)
        if not np.isfinite(nrm) or nrm > limit:
            return step
        out[step] = x
    return 0


def fdm_march(env, N_f, series, starter_values, r_max, delta_r, system=None):
    """
    March interior FD samples from r = delta_r to r_max.

    ``starter_values`` holds all N_f + 1 nodal values (boundary entries are
    ignored and pinned to zero).  Returns a MarchResult whose ``spectra``
    rows are the nodal reduced-pressure profiles, boundaries included.
    """
    if system is None:
        system = build_fdm_system(env, N_f, series)
    start = np.asarray(starter_values, dtype=complex)
    if start.shape != system.depths.shape:
        raise DimensionError(f"starter has {start.size} values, grid has {system.depths.size}")
    M = _step_count(r_max, delta_r)
    m = system.diag.size
    interior = np.empty((M, m), dtype=complex)
    interior[0] = start[1:-1]
    ref = np.linalg.norm(interior[0])
    limit = GROWTH_LIMIT * (ref if ref > 0 else 1.0)
    phase = complex(np.exp(1j * env.k0 * delta_r))
    bad = _march_kernel(interior, system.r_off, system.r_diag, system.l_off,
                        system.l_inv_pivot, system.l_upper, phase, limit)
    if bad:
        raise InstabilityError(f"FDM march unstable at step {bad}", step=bad)
    values = np.zeros((M, m + 2), dtype=complex)
    values[:, 1:-1] = interior
    return MarchResult(ranges=delta_r * np.arange(1, M + 1), spectra=values)
