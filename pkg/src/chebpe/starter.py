"""
Initial reduced-pressure fields at r = delta_r.

``modal`` sums the propagating normal modes of an isovelocity waveguide.
By default each mode carries the large-argument form of its Hankel
factor, sqrt(2 / (pi kr r)) exp(i (kr r - pi / 4)), which is the field
the one-way equation actually transports; ``hankel="exact"`` uses
H0(kr r) itself.  ``gaussian`` is the usual
sqrt(k0) exp(-k0^2 (z - zs)^2 / 2) source with adjustable width.
Both return physical samples through ``*_values`` and Chebyshev spectra
through the un-suffixed functions.
"""

from dataclasses import dataclass, replace

import numpy as np

from .chebyshev import forward_transform
from .environment import map_depth_to_cgl
from .errors import DomainError
from .oracle.modal import modal_solution, modal_sum


@dataclass(frozen=True)
class StarterSpec:
    kind: str = "modal"
    max_modes: int = None  # cap on propagating modes; None keeps all
    width_scale: float = 1.0
    hankel: str = "farfield"

    def __post_init__(self):
        if self.kind not in ("modal", "gaussian"):
            raise DomainError(f"unknown starter kind {self.kind!r}")
        if self.hankel not in ("farfield", "exact"):
            raise DomainError(f"unknown Hankel form {self.hankel!r}")
        if self.max_modes is not None and self.max_modes < 1:
            raise DomainError("max_modes must be >= 1")
        if not self.width_scale > 0:
            raise DomainError("width_scale must be positive")


def modal_starter_values(env, z, delta_r, max_modes=None, hankel="farfield"):
    """Reduced pressure sqrt(r) P(r, z) at r = delta_r from the propagating modes."""
    if not delta_r > 0:
        raise DomainError("starter range must be positive")
    modes = modal_solution(env)
    keep = np.abs(modes.kr.imag) < np.abs(modes.kr.real)
    kz, kr = modes.kz[keep], modes.kr[keep]
    if max_modes is not None:
        kz, kr = kz[:max_modes], kr[:max_modes]
    z = np.asarray(z, dtype=float)
    if hankel == "exact":
        return np.sqrt(delta_r) * modal_sum(replace(modes, kz=kz, kr=kr), [delta_r], z)[0]
    amp = np.sqrt(2.0 / (np.pi * kr)) * np.exp(1j * (kr * delta_r - 0.25 * np.pi))
    src = np.sin(kz * env.source_depth)
    return (2j * np.pi / env.depth) * (np.sin(np.outer(z, kz)) @ (src * amp))


def gaussian_starter_values(env, z, width_scale=1.0):
    """Gaussian source samples with the linear endpoint interpolant removed."""
    z = np.asarray(z, dtype=float)
    k0 = env.k0

    def g(zz):
        return np.sqrt(k0) * np.exp(-0.5 * (k0 * (zz - env.source_depth) / width_scale) ** 2)

    top, bottom = g(0.0), g(env.depth)
    vals = g(z) - (top + (bottom - top) * z / env.depth)
    return vals.astype(complex)


def modal_starter(env, grid, delta_r, max_modes=None, hankel="farfield"):
    z = map_depth_to_cgl(env.depth, grid)
    return forward_transform(modal_starter_values(env, z, delta_r, max_modes, hankel), grid)


def gaussian_starter(env, grid, width_scale=1.0):
    z = map_depth_to_cgl(env.depth, grid)
    return forward_transform(gaussian_starter_values(env, z, width_scale), grid)


def starter_values(spec, env, z, delta_r):
    if spec.kind == "modal":
        return modal_starter_values(env, z, delta_r, spec.max_modes, spec.hankel)
    return gaussian_starter_values(env, z, spec.width_scale)


def starter_spectrum(spec, env, grid, delta_r):
    z = map_depth_to_cgl(env.depth, grid)
    return forward_transform(starter_values(spec, env, z, delta_r), grid)
