"""
Split-step Pade coefficients for the one-way range propagator.

The propagator over one range step is

    exp(i k0 dr sqrt(1 + X)) = exp(i sigma) * f(X),
    f(t) = exp(i sigma (sqrt(1 + t) - 1)),   sigma = k0 dr,

and f is replaced by the [n/n] Pade approximant written in product form
prod_j (1 + alpha_j t) / (1 + beta_j t).  The Maclaurin series of f, the
Hankel system for the denominator and the polynomial roots are all
computed in extended precision because the system is badly conditioned
for n >= 6.
"""

from dataclasses import dataclass

import mpmath
import numpy as np

from .errors import InvalidOrderError, SingularityError, SynthesisError

MAX_TERMS = 12
_DPS = 60


@dataclass(frozen=True)
class PadeSeries:
    n: int
    sigma: float
    alpha: np.ndarray
    beta: np.ndarray

    @property
    def phase(self):
        return np.exp(1j * self.sigma)


def propagator_taylor(sigma, order, dps=_DPS):
    """
    Maclaurin coefficients c_0..c_order of exp(i sigma (sqrt(1+t) - 1)).

    Returned as a list of mpmath complex numbers at ``dps`` digits.
    """
    with mpmath.workdps(dps):
        sigma = mpmath.mpf(sigma)
        # g(t) = i sigma (sqrt(1+t) - 1) = sum_{k>=1} g_k t^k
        g = [mpmath.mpc(0)] + [1j * sigma * mpmath.binomial(mpmath.mpf(1) / 2, k)
                               for k in range(1, order + 1)]
        # E = exp(g) satisfies E' = g' E  =>  k e_k = sum_j j g_j e_{k-j}
        e = [mpmath.mpc(1)]
        for k in range(1, order + 1):
            e.append(mpmath.fsum(j * g[j] * e[k - j] for j in range(1, k + 1)) / k)
        return e


def _roots(coeffs):
    """Roots of sum_k coeffs[k] t^k via companion-matrix eigenvalues."""
    deg = len(coeffs) - 1
    lead = coeffs[-1]
    if abs(lead) == 0:
        raise SynthesisError("leading Pade coefficient vanished; degree drop")
    if deg == 1:
        return [-coeffs[0] / lead]
    A = mpmath.zeros(deg, deg)
    for i in range(1, deg):
        A[i, i - 1] = 1
    for i in range(deg):
        A[i, deg - 1] = -coeffs[i] / lead
    try:
        ev = mpmath.eig(A, left=False, right=False)
    except Exception as exc:  # mpmath raises bare RuntimeErrors on non-convergence
        raise SynthesisError(f"companion eigenvalue iteration failed: {exc}") from exc
    return list(ev)


def _sorted_by_magnitude(z):
    z = np.asarray(z, dtype=complex)
    order = np.lexsort((np.angle(z), np.abs(z)))
    return z[order]


def compute_pade_series(k0, delta_r, n):
    """
    Build the n-term product-form Pade propagator for a range step.

    Parameters
    ----------
    k0 : float
        Reference wavenumber (1/m).
    delta_r : float
        Range step (m).
    n : int
        Number of rational factors, 1 <= n <= 12.
    """
    if int(n) != n or not 1 <= n <= MAX_TERMS:
        raise InvalidOrderError(f"number of Pade terms must be in 1..{MAX_TERMS}, got {n!r}")
    if not (k0 > 0 and delta_r > 0):
        raise ValueError("k0 and delta_r must be positive")
    n = int(n)
    sigma = float(k0) * float(delta_r)

    with mpmath.workdps(_DPS):
        c = propagator_taylor(sigma, 2 * n)
        # denominator b_0 = 1; sum_{j=0..n} b_j c_{k-j} = 0 for k = n+1..2n
        H = mpmath.matrix(n, n)
        rhs = mpmath.matrix(n, 1)
        for row in range(n):
            k = n + 1 + row
            for j in range(1, n + 1):
                H[row, j - 1] = c[k - j]
            rhs[row] = -c[k]
        try:
            b_tail = mpmath.lu_solve(H, rhs)
        except ZeroDivisionError as exc:
            raise SynthesisError(f"Hankel system singular for n={n}, sigma={sigma}") from exc
        b = [mpmath.mpc(1)] + [b_tail[i] for i in range(n)]
        a = [mpmath.fsum(b[j] * c[k - j] for j in range(k + 1)) for k in range(n + 1)]

        num_roots = _roots(a)
        den_roots = _roots(b)
        if any(abs(r) == 0 for r in num_roots + den_roots):
            raise SynthesisError("zero root in Pade polynomial")
        # prod (1 + alpha t) has roots t = -1/alpha
        alpha = [complex(-1 / r) for r in num_roots]
        beta = [complex(-1 / r) for r in den_roots]

    alpha = _sorted_by_magnitude(alpha)
    beta = _sorted_by_magnitude(beta)
    if not (np.all(np.isfinite(alpha)) and np.all(np.isfinite(beta))):
        raise SynthesisError(f"non-finite coefficients for n={n}, sigma={sigma}")
    alpha.setflags(write=False)
    beta.setflags(write=False)
    return PadeSeries(n=n, sigma=sigma, alpha=alpha, beta=beta)


def rational_factor(series, t):
    """prod_j (1 + alpha_j t) / (1 + beta_j t), vectorized over ``t``, without the phase."""
    t = np.asarray(t, dtype=complex)
    out = np.ones_like(t)
    for j, (a, b) in enumerate(zip(series.alpha, series.beta)):
        den = 1.0 + b * t
        if np.any(den == 0):
            raise SingularityError(f"pole of Pade factor {j + 1} hit", term=j + 1)
        out = out * (1.0 + a * t) / den
    return out


def evaluate_propagator(series, t):
    """Scalar (or elementwise) value of the full one-step propagator at ``t``."""
    return series.phase * rational_factor(series, t)


def product_taylor(series, order):
    """
    Maclaurin coefficients of the product form through ``order``.

    Expanded in high precision from the stored double coefficients so the
    check measures the coefficients, not the expansion.
    """
    with mpmath.workdps(_DPS):
        poly = [mpmath.mpc(1)] + [mpmath.mpc(0)] * order
        for a, b in zip(series.alpha, series.beta):
            a = mpmath.mpc(a)
            b = mpmath.mpc(b)
            # 1 / (1 + b t) = sum (-b)^k t^k; times (1 + a t)
            factor = [mpmath.mpc(1)]
            for k in range(1, order + 1):
                factor.append((-b) ** k + a * (-b) ** (k - 1))
            poly = [mpmath.fsum(poly[i] * factor[k - i] for i in range(k + 1))
                    for k in range(order + 1)]
        return poly
