"""
Normal-mode solution of the isovelocity pressure-release waveguide.

    P(r, z) = (2 pi i / H) sum_m sin(kz_m zs) sin(kz_m z) H0(kr_m r)

with kz_m = m pi / H and kr_m = sqrt(k^2 - kz_m^2), Im(kr_m) >= 0.  The
normalization makes the free-field amplitude one at 1 m from the source.
"""

from dataclasses import dataclass

import numpy as np
from scipy import special

from ..environment import ETA
from ..errors import DomainError, UnsupportedStarterError

_TAIL_TOL = 1e-12
_MODE_CAP = 100000


def hankel0_first_kind(x):
    """H0^(1)(x) = J0(x) + i Y0(x) for x > 0 (real or complex with Re x >= 0)."""
    x = np.asarray(x)
    if np.iscomplexobj(x):
        if np.any(x == 0):
            raise DomainError("H0 is singular at zero")
    elif np.any(x <= 0):
        raise DomainError("H0 argument must be positive")
    return special.hankel1(0, x)[()]


@dataclass(frozen=True)
class ModalSolution:
    depth: float
    source_depth: float
    k: complex
    kz: np.ndarray
    kr: np.ndarray

    @property
    def n_propagating(self):
        return int(np.sum(np.abs(self.kr.imag) < np.abs(self.kr.real)))


def _horizontal(k, kz):
    kr = np.sqrt((k * k - kz * kz).astype(complex))
    return np.where(kr.imag < 0, -kr, kr)


def _require_isovelocity(env):
    if env.ssp.kind != "isovelocity" or not env.density.is_uniform:
        raise UnsupportedStarterError(
            "modal solution needs an isovelocity, uniform-density waveguide"
        )


def modal_solution(env, max_modes=None, r_min=None):
    """
    Mode set for ``env``.

    With ``max_modes=None`` the set holds every propagating mode plus the
    evanescent modes whose Hankel factor at ``r_min`` still exceeds
    1e-12 of the strongest propagating one.  Without ``r_min`` only
    propagating modes are kept.
    """
    _require_isovelocity(env)
    H = env.depth
    k = complex((1.0 + 1j * ETA * env.atten) * env.omega / env.ssp.speed)
    if max_modes is not None:
        if max_modes < 1:
            raise DomainError("max_modes must be >= 1")
        m = np.arange(1, int(max_modes) + 1)
        kz = m * np.pi / H
        return ModalSolution(H, env.source_depth, k, kz, _horizontal(k, kz))
    n_prop = int(np.floor(k.real * H / np.pi))
    m = np.arange(1, max(n_prop, 1) + 1)
    if r_min is not None:
        if r_min <= 0:
            raise DomainError("r_min must be positive")
        ref = np.abs(hankel0_first_kind(_horizontal(k, m * np.pi / H) * r_min)).max()
        last = m[-1]
        while last < _MODE_CAP:
            kz = (last + 1) * np.pi / H
            kr = _horizontal(k, np.array([kz]))[0]
            if kr.imag > abs(kr.real) and np.abs(hankel0_first_kind(kr * r_min)) < _TAIL_TOL * ref:
                break
            last += 1
        m = np.arange(1, last + 1)
    kz = m * np.pi / H
    return ModalSolution(H, env.source_depth, k, kz, _horizontal(k, kz))


def modal_sum(modes, r, z):
    """Full pressure on the outer product of ranges ``r`` and depths ``z``."""
    r = np.atleast_1d(np.asarray(r, dtype=float))
    z = np.atleast_1d(np.asarray(z, dtype=float))
    if np.any(r <= 0):
        raise DomainError("range must be positive")
    src = np.sin(modes.kz * modes.source_depth)
    shape = np.sin(np.outer(z, modes.kz))  # (P, modes)
    amp = hankel0_first_kind(np.outer(r, modes.kr))  # (M, modes)
    return (2j * np.pi / modes.depth) * ((amp * src) @ shape.T)


def analytic_field(env, r, z, max_modes=None):
    """
    Complex full pressure at ranges ``r`` and depths ``z`` (outer product).

    Scalars in give a scalar out.  ``max_modes=None`` truncates the
    evanescent tail adaptively at the smallest requested range.
    """
    scalar = np.ndim(r) == 0 and np.ndim(z) == 0
    r_arr = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(r_arr <= 0):
        raise DomainError("range must be positive")
    z_arr = np.atleast_1d(np.asarray(z, dtype=float))
    if np.any(z_arr < 0) or np.any(z_arr > env.depth):
        raise DomainError("depth outside water column")
    modes = modal_solution(env, max_modes=max_modes, r_min=r_arr.min())
    out = modal_sum(modes, r_arr, z_arr)
    return out[0, 0] if scalar else out
