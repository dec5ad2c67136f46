"""Shared independent oracles for the solver tests."""

import numpy as np
import scipy.linalg as sla

from chebpe.solver import boundary_rows


def boundary_basis(N):
    """Orthonormal basis (N+1, N-1) of spectra satisfying both boundary rows."""
    return sla.null_space(boundary_rows(N))


def eigen_step(X, series, phat):
    """
    One rational step by eigendecomposition of the interior-projected operator.

    On the boundary subspace y = Z c, the weak-form rows give
    (PZ + b PXZ) c_out = (PZ + a PXZ) c_in, so every factor is a function of
    A = (PZ)^-1 PXZ and the rational product acts on the eigenvalues of A.
    """
    N = X.shape[0] - 1
    Z = boundary_basis(N)
    PZ = Z[: N - 1]
    A = np.linalg.solve(PZ, X[: N - 1] @ Z)
    lam, V = np.linalg.eig(A)
    g = np.ones_like(lam)
    for a, b in zip(series.alpha, series.beta):
        g *= (1 + a * lam) / (1 + b * lam)
    c = Z.T @ phat
    return Z @ (V @ (g * np.linalg.solve(V, c)))


def rel_err(a, b):
    return np.linalg.norm(a - b) / np.linalg.norm(b)
