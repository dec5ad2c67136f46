"""
Chebyshev-Tau discretization of the depth operator and the range march.

Each Pade factor gives a pair L_j = I + beta_j X, R_j = I + alpha_j X.
Rows 0..N-2 carry the Tau weak form; rows N-1 and N of every L_j are
replaced by the pressure-release conditions sum_k p_k = 0 and
sum_k (-1)^k p_k = 0, and the same rows of R_j are zeroed, so each
sub-solve lands back on the boundary-satisfying subspace.
"""

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .chebyshev import cgl_points, convolution_map, derivative_map
from .environment import density_spectra, wavenumber_profile
from .errors import DimensionError, FactorizationError, InstabilityError, InvalidOrderError

GROWTH_LIMIT = 1e6


@dataclass(frozen=True)
class DepthOperator:
    order: int
    matrix: np.ndarray
    k0: float
    depth: float


def boundary_rows(N):
    """(2, N+1) array: surface row (+1)^k and bottom row (-1)^k."""
    return np.vstack([np.ones(N + 1), (-1.0) ** np.arange(N + 1)])


def boundary_residual(spectra):
    """Max over both boundaries of |sum_k p_k (+-1)^k| / ||p||, per spectrum."""
    spectra = np.atleast_2d(spectra)
    res = np.abs(spectra @ boundary_rows(spectra.shape[-1] - 1).T).max(axis=-1)
    norm = np.linalg.norm(spectra, axis=-1)
    return np.where(norm > 0, res / np.where(norm > 0, norm, 1.0), res)


def assemble_depth_operator(env, N):
    """
    Spectral matrix of the depth operator

        X = k0^-2 [ (4/H^2) C_rho D C_{1/rho} D + C_{k^2} - k0^2 I ]
    """
    if int(N) != N or N < 4:
        raise InvalidOrderError(f"spectral order must be an integer >= 4, got {N!r}")
    N = int(N)
    grid = cgl_points(N)
    k0 = env.k0
    D = derivative_map(N)
    if env.density.is_uniform:
        second = D @ D
    else:
        rho_hat, inv_rho_hat = density_spectra(env, grid)
        second = convolution_map(rho_hat) @ D @ convolution_map(inv_rho_hat) @ D
    Ck2 = convolution_map(wavenumber_profile(env, grid))
    X = ((4.0 / env.depth ** 2) * second + Ck2 - k0 ** 2 * np.eye(N + 1)) / k0 ** 2
    return DepthOperator(order=N, matrix=X.astype(complex), k0=k0, depth=env.depth)


@dataclass(frozen=True)
class SteppedSystem:
    """Boundary-modified L_j (LU factored) and R_j for every Pade term."""

    order: int
    lhs: tuple
    rhs: tuple
    lu: tuple
    series: object

    @property
    def n(self):
        return len(self.rhs)

    def apply(self, phat):
        """Rational product applied to ``phat`` by n sequential solves (no phase)."""
        x = np.asarray(phat, dtype=complex)
        for lu, R in zip(self.lu, self.rhs):
            x = sla.lu_solve(lu, R @ x, check_finite=False)
        return x


def build_stepped_system(X, series):
    M = X.matrix if isinstance(X, DepthOperator) else np.asarray(X)
    N = M.shape[0] - 1
    if M.shape != (N + 1, N + 1):
        raise DimensionError("depth operator must be square")
    eye = np.eye(N + 1, dtype=complex)
    bc = boundary_rows(N)
    lhs, rhs, lus = [], [], []
    for j, (a, b) in enumerate(zip(series.alpha, series.beta), start=1):
        L = eye + b * M
        L[N - 1:] = bc
        R = eye + a * M
        R[N - 1:] = 0.0
        with warnings.catch_warnings():
            # singularity is detected and reported below
            warnings.simplefilter("ignore", sla.LinAlgWarning)
            lu, piv = sla.lu_factor(L, check_finite=False)
        diag = np.abs(np.diag(lu))
        if not np.all(np.isfinite(lu)) or diag.min() <= np.finfo(float).eps * diag.max() * (N + 1):
            raise FactorizationError(f"modified L_{j} is singular", term=j)
        lhs.append(L)
        rhs.append(R)
        lus.append((lu, piv))
    for arr in lhs + rhs:
        arr.setflags(write=False)
    return SteppedSystem(order=N, lhs=tuple(lhs), rhs=tuple(rhs), lu=tuple(lus), series=series)


def step_split(system, phat, k0, delta_r):
    """One range step by n sequential Tau solves, then the scalar phase."""
    return np.exp(1j * k0 * delta_r) * system.apply(phat)


def build_transfer_matrix(system):
    """T = M_n ... M_2 M_1 with M_j = L_j^-1 R_j; the range phase is kept out of T."""
    N = system.order
    T = np.eye(N + 1, dtype=complex)
    for lu, R in zip(system.lu, system.rhs):
        T = sla.lu_solve(lu, R @ T, check_finite=False)
    T.setflags(write=False)
    return T


@dataclass(frozen=True)
class MarchResult:
    ranges: np.ndarray
    spectra: np.ndarray  # (M, N+1), row i at ranges[i]


def _step_count(r_max, delta_r):
    if not delta_r > 0:
        raise ValueError("range step must be positive")
    if r_max < delta_r:
        raise ValueError("r_max must be at least one range step")
    # tolerate r_max / delta_r landing a hair below an integer
    return int(np.floor(r_max / delta_r + 1e-9))


def march(env, N, series, starter_spectrum, r_max, delta_r, mode="split", system=None,
          transfer=None):
    """
    March the starter (given at r = delta_r) out to r_max.

    ``mode`` is ``"split"`` (n back-substitutions per step) or
    ``"transfer"`` (one matrix-vector product per step).  A prebuilt
    ``system`` (and, for transfer mode, ``transfer`` matrix) may be passed
    to share setup between marches.
    """
    if mode not in ("split", "transfer"):
        raise ValueError(f"unknown march mode {mode!r}")
    M = _step_count(r_max, delta_r)
    p = np.asarray(starter_spectrum, dtype=complex)
    if p.shape != (N + 1,):
        raise DimensionError(f"starter has length {p.size}, expected {N + 1}")
    if system is None:
        system = build_stepped_system(assemble_depth_operator(env, N), series)
    phase = np.exp(1j * env.k0 * delta_r)
    spectra = np.empty((M, N + 1), dtype=complex)
    spectra[0] = p
    if M > 1:
        if mode == "transfer":
            T = build_transfer_matrix(system) if transfer is None else transfer
            advance = lambda v: phase * (T @ v)  # noqa: E731
        else:
            advance = lambda v: phase * system.apply(v)  # noqa: E731
        _run_steps(spectra, advance)
    ranges = delta_r * np.arange(1, M + 1)
    return MarchResult(ranges=ranges, spectra=spectra)


def _run_steps(out, advance):
    """Fill rows 1.. of ``out`` by repeated ``advance``; guards against blow-up."""
    ref = np.linalg.norm(out[0])
    limit = GROWTH_LIMIT * (ref if ref > 0 else 1.0)
    v = out[0]
    for i in range(1, out.shape[0]):
        v = advance(v)
        nrm = np.linalg.norm(v)
        if not np.isfinite(nrm):
            raise InstabilityError(f"non-finite field at step {i}", step=i)
        if nrm > limit:
            raise InstabilityError(
                f"field norm grew by {nrm / max(ref, 1e-300):.3g}x at step {i}", step=i
            )
        out[i] = v
