"""
Chebyshev-Gauss-Lobatto grids and spectral-space operators.

Spectra are plain complex numpy arrays of length N+1 holding the expansion
coefficients of u(x) = sum_k u_k T_k(x) on x in [-1, 1].  Every transform
is a dense O(N^2) matrix product; T_k at the grid nodes is evaluated in the
closed form cos(k j pi / N).
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, InvalidOrderError


@dataclass(frozen=True)
class CglGrid:
    """Chebyshev-Gauss-Lobatto nodes x_j = cos(j pi / N), j = 0..N."""

    order: int
    points: np.ndarray

    @property
    def size(self):
        return self.order + 1


def _check_order(N):
    if int(N) != N or N < 2:
        raise InvalidOrderError(f"truncation order must be an integer >= 2, got {N!r}")
    return int(N)


def cgl_points(N):
    N = _check_order(N)
    # sin form is exactly antisymmetric about j = N/2 and hits +-1 exactly
    x = np.sin(np.pi * (N - 2 * np.arange(N + 1)) / (2 * N))
    x.setflags(write=False)
    return CglGrid(N, x)


def _node_cosines(N):
    # T_k(x_j) = cos(k j pi / N); reduce k*j mod 2N first to keep the argument small.
    kj = np.outer(np.arange(N + 1), np.arange(N + 1)) % (2 * N)
    return np.cos(np.pi * kj / N)


def forward_matrix(N):
    """Matrix F with spectrum = F @ values (discrete Gauss-Lobatto transform)."""
    N = _check_order(N)
    w = np.full(N + 1, np.pi / N)
    w[0] = w[N] = np.pi / (2 * N)
    d = np.full(N + 1, np.pi / 2)
    d[0] = d[N] = np.pi
    return _node_cosines(N) * w[None, :] / d[:, None]


def backward_matrix(N):
    """Matrix B with values = B @ spectrum; B[j, k] = T_k(x_j)."""
    N = _check_order(N)
    return _node_cosines(N).T


def forward_transform(values, grid=None):
    """
    Chebyshev coefficients of a function sampled at CGL nodes.

    Parameters
    ----------
    values : array_like, shape (N+1,) or (M, N+1)
        Samples ordered j = 0..N (x = 1 first).  A 2-D input transforms
        each row.
    grid : CglGrid, optional
        When given, its order must match the sample count.
    """
    values = np.asarray(values)
    n = values.shape[-1]
    if grid is not None and grid.size != n:
        raise DimensionError(f"{n} samples do not match grid of order {grid.order}")
    if n < 3:
        raise DimensionError(f"need at least 3 samples, got {n}")
    F = forward_matrix(n - 1)
    return values @ F.T


def backward_transform(spectrum, grid):
    """Values of the Chebyshev series at the nodes of ``grid``."""
    spectrum = np.asarray(spectrum)
    if spectrum.shape[-1] != grid.size:
        raise DimensionError(
            f"spectrum of length {spectrum.shape[-1]} does not match grid of order {grid.order}"
        )
    return spectrum @ backward_matrix(grid.order).T


def derivative_map(N):
    """
    Spectral first-derivative matrix.

    ``D[k, p] = 2 p / c_k`` for ``p > k`` with ``p + k`` odd, where
    ``c_0 = 2`` and ``c_k = 1`` otherwise.
    """
    N = _check_order(N)
    k = np.arange(N + 1)[:, None]
    p = np.arange(N + 1)[None, :]
    D = np.where((p > k) & ((p + k) % 2 == 1), 2.0 * p, 0.0)
    D[0, :] *= 0.5
    return D


def convolution_map(v_spectrum):
    """
    Matrix C_v realizing multiplication by v(x) in spectral space.

    Uses T_m T_n = (T_{m+n} + T_{|m-n|}) / 2 with everything above degree N
    discarded.
    """
    v = np.asarray(v_spectrum)
    if v.ndim != 1:
        raise DimensionError("convolution_map expects a single spectrum")
    N = v.size - 1
    if N < 2:
        raise DimensionError(f"spectrum too short: {v.size}")
    k = np.arange(N + 1)[:, None]
    m = np.arange(N + 1)[None, :]
    dtype = np.result_type(v.dtype, np.float64)
    C = np.zeros((N + 1, N + 1), dtype=dtype)

    def gather(idx):
        ok = (idx >= 0) & (idx <= N)
        return np.where(ok, v[np.clip(idx, 0, N)], 0.0)

    C += 0.5 * gather(k - m)  # m + n = k
    C += 0.5 * gather(m + k)  # n - m = k
    C += 0.5 * np.where(k > 0, gather(m - k), 0.0)  # m - n = k; coincides with the above when k = 0
    return C


def clenshaw(spectrum, x):
    """
    Evaluate Chebyshev series at arbitrary points in [-1, 1].

    ``spectrum`` may be (N+1,) or (M, N+1); the result has shape
    ``spectrum.shape[:-1] + x.shape``.
    """
    a = np.asarray(spectrum)
    x = np.asarray(x, dtype=float)
    lead = a.shape[:-1]
    a = a.reshape(lead + (1,) * x.ndim + (a.shape[-1],))
    b1 = np.zeros(lead + x.shape, dtype=np.result_type(a.dtype, float))
    b2 = np.zeros_like(b1)
    for k in range(a.shape[-1] - 1, 0, -1):
        b1, b2 = 2.0 * x * b1 - b2 + a[..., k], b1
    return x * b1 - b2 + a[..., 0]
