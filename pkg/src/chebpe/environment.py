"""
Range-independent waveguide description.

Depths are in meters measured downward from the surface, sound speeds in
m/s, densities in g/cm^3 and attenuation in dB per wavelength.  The water
column spans [0, H] with pressure-release surface and bottom.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .chebyshev import forward_transform
from .errors import DomainError

# converts dB/wavelength into the imaginary part of the wavenumber factor
ETA = 1.0 / (40.0 * math.pi * math.log10(math.e))

# Tabulated rough negative-gradient profile (depth m, speed m/s)
ROUGH_SHALLOW_TABLE = (
    (0.0, 1560.0),
    (50.0, 1555.0),
    (100.0, 1530.0),
    (200.0, 1525.0),
    (250.0, 1520.0),
    (300.0, 1510.0),
    (350.0, 1505.0),
    (400.0, 1500.0),
)


def munk_speed(z):
    """Canonical Munk deep-ocean sound-speed profile (axis at 1300 m)."""
    zt = (np.asarray(z, dtype=float) - 1300.0) / 650.0
    return 1500.0 * (1.0 + 0.0073 * (zt - 1.0 + np.exp(-zt)))


def _check_table(points, name):
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
        raise DomainError(f"{name} table needs at least two (z, value) rows")
    if np.any(np.diff(pts[:, 0]) <= 0):
        raise DomainError(f"{name} table depths must be strictly increasing")
    return pts


@dataclass(frozen=True)
class SoundSpeedProfile:
    """
    kind is ``"isovelocity"`` (uses ``speed``), ``"munk"``, or ``"table"``
    (uses ``points``, linear interpolation, no extrapolation).
    """

    kind: str
    speed: float = 1500.0
    points: tuple = ()

    def __post_init__(self):
        if self.kind not in ("isovelocity", "munk", "table"):
            raise DomainError(f"unknown sound-speed profile kind {self.kind!r}")
        if self.kind == "isovelocity" and not self.speed > 0:
            raise DomainError("sound speed must be positive")
        if self.kind == "table":
            pts = _check_table(self.points, "sound-speed")
            if np.any(pts[:, 1] <= 0):
                raise DomainError("sound speed must be positive")
            object.__setattr__(self, "points", tuple((float(a), float(b)) for a, b in pts))

    @classmethod
    def isovelocity(cls, c):
        return cls("isovelocity", speed=float(c))

    @classmethod
    def munk(cls):
        return cls("munk")

    @classmethod
    def table(cls, points):
        return cls("table", points=tuple(points))

    def span(self):
        if self.kind == "table":
            return self.points[0][0], self.points[-1][0]
        return -math.inf, math.inf


@dataclass(frozen=True)
class DensityProfile:
    kind: str = "constant"
    rho: float = 1.0
    points: tuple = ()

    def __post_init__(self):
        if self.kind not in ("constant", "table"):
            raise DomainError(f"unknown density profile kind {self.kind!r}")
        if self.kind == "constant" and not self.rho > 0:
            raise DomainError("density must be positive")
        if self.kind == "table":
            pts = _check_table(self.points, "density")
            if np.any(pts[:, 1] <= 0):
                raise DomainError("density must be positive")
            object.__setattr__(self, "points", tuple((float(a), float(b)) for a, b in pts))

    @classmethod
    def constant(cls, rho=1.0):
        return cls("constant", rho=float(rho))

    @classmethod
    def table(cls, points):
        return cls("table", points=tuple(points))

    @property
    def is_uniform(self):
        return self.kind == "constant"


def _interp_table(points, z, name):
    pts = np.asarray(points)
    z = np.asarray(z, dtype=float)
    if np.any(z < pts[0, 0]) or np.any(z > pts[-1, 0]):
        raise DomainError(f"depth outside tabulated {name} range [{pts[0, 0]}, {pts[-1, 0]}]")
    return np.interp(z, pts[:, 0], pts[:, 1])


@dataclass(frozen=True)
class Environment:
    """
    Parameters
    ----------
    depth : float
        Water depth H (m).
    freq : float
        Source frequency (Hz).
    source_depth : float
        Source depth zs (m), strictly inside (0, H).
    receiver_depth : float
        Depth of the TL slice (m), strictly inside (0, H).
    ssp : SoundSpeedProfile
    density : DensityProfile
    atten : float
        Volume attenuation in dB per wavelength.
    c0 : float
        Reference sound speed (m/s).
    """

    depth: float
    freq: float
    source_depth: float
    receiver_depth: float
    ssp: SoundSpeedProfile = field(default_factory=lambda: SoundSpeedProfile.isovelocity(1500.0))
    density: DensityProfile = field(default_factory=DensityProfile.constant)
    atten: float = 0.0
    c0: float = 1500.0

    def __post_init__(self):
        if not self.depth > 0:
            raise DomainError("water depth must be positive")
        if not self.freq > 0:
            raise DomainError("frequency must be positive")
        if not self.c0 > 0:
            raise DomainError("reference speed must be positive")
        if not self.atten >= 0:
            raise DomainError("attenuation must be non-negative")
        for name in ("source_depth", "receiver_depth"):
            v = getattr(self, name)
            if not 0 < v < self.depth:
                raise DomainError(f"{name}={v} must lie strictly inside (0, {self.depth})")
        for prof, label in ((self.ssp, "sound-speed"), (self.density, "density")):
            if prof.kind == "table":
                z0, z1 = prof.points[0][0], prof.points[-1][0]
                if z0 != 0.0 or z1 != self.depth:
                    raise DomainError(f"{label} table must span [0, {self.depth}], got [{z0}, {z1}]")

    @property
    def omega(self):
        return 2.0 * math.pi * self.freq

    @property
    def k0(self):
        return self.omega / self.c0

    @property
    def wavelength(self):
        return self.c0 / self.freq

    @property
    def is_isovelocity(self):
        return self.ssp.kind == "isovelocity"

    def _check_depth(self, z):
        z = np.asarray(z, dtype=float)
        if np.any(z < 0) or np.any(z > self.depth):
            raise DomainError(f"depth outside water column [0, {self.depth}]")
        return z

    def sound_speed(self, z):
        return sound_speed_at(self.ssp, z, self.depth)

    def rho(self, z):
        z = self._check_depth(z)
        if self.density.kind == "constant":
            return np.full(z.shape, self.density.rho)
        return _interp_table(self.density.points, z, "density")

    def wavenumber(self, z):
        """Complex medium wavenumber (1 + i eta beta) omega / c(z)."""
        return (1.0 + 1j * ETA * self.atten) * self.omega / self.sound_speed(z)


def sound_speed_at(ssp, z, H=None):
    """Sound speed at depth ``z``; ``H`` bounds the column when given."""
    z = np.asarray(z, dtype=float)
    if np.any(z < 0) or (H is not None and np.any(z > H)):
        raise DomainError(f"depth outside water column [0, {H}]")
    if ssp.kind == "isovelocity":
        return np.full(z.shape, ssp.speed)[()]
    if ssp.kind == "munk":
        return munk_speed(z)[()]
    return _interp_table(ssp.points, z, "sound-speed")[()]


def map_depth_to_cgl(H, grid):
    """Physical depths z_j = H (1 - x_j) / 2 of the CGL nodes (surface first)."""
    if not H > 0:
        raise DomainError("water depth must be positive")
    z = 0.5 * H * (1.0 - grid.points)
    z[0], z[-1] = 0.0, H
    return z


def depth_to_x(H, z):
    return 1.0 - 2.0 * np.asarray(z, dtype=float) / H


def wavenumber_profile(env, grid):
    """Chebyshev spectrum of k^2(x) sampled on the CGL grid."""
    z = map_depth_to_cgl(env.depth, grid)
    k = env.wavenumber(z)
    return forward_transform(k * k, grid)


def density_spectra(env, grid):
    """Spectra of rho(x) and 1/rho(x) on the CGL grid."""
    z = map_depth_to_cgl(env.depth, grid)
    rho = env.rho(z)
    return forward_transform(rho.astype(complex), grid), forward_transform((1.0 / rho).astype(complex), grid)
