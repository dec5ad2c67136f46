"""Physical pressure and transmission-loss grids from marched spectra."""

from dataclasses import dataclass

import numpy as np

from .chebyshev import clenshaw
from .environment import depth_to_x
from .errors import DimensionError, DomainError


@dataclass(frozen=True)
class FieldGrid:
    ranges: np.ndarray  # (M,)
    depths: np.ndarray  # (P,)
    pressure: np.ndarray  # (M, P) full pressure, spreading restored
    reference: complex = 1.0

    @property
    def tl(self):
        return transmission_loss(self.pressure, self.reference)

    def slice_at(self, z):
        i = int(np.argmin(np.abs(self.depths - z)))
        if not np.isclose(self.depths[i], z, rtol=0, atol=1e-9 * max(1.0, abs(z))):
            raise DomainError(f"depth {z} not on the output grid")
        return self.tl[:, i]


def transmission_loss(pressure, reference=1.0):
    with np.errstate(divide="ignore"):
        return -20.0 * np.log10(np.abs(pressure) / np.abs(reference))


def reference_pressure(env):
    """
    Pressure 1 m from the source.

    Starters and the modal oracle are normalized to a unit-amplitude point
    source, so this is 1 for every environment.
    """
    return 1.0 + 0j


def materialize(march, grid, H, output_depths, reference=1.0):
    """
    Evaluate each range's spectrum at ``output_depths`` and divide by sqrt(r).

    The series is summed directly at the mapped x, so there is no depth
    interpolation error.
    """
    z = np.asarray(output_depths, dtype=float)
    if np.any(z < 0) or np.any(z > H):
        raise DomainError(f"output depths must lie in [0, {H}]")
    if march.spectra.shape[-1] != grid.size:
        raise DimensionError("march order does not match grid")
    reduced = clenshaw(march.spectra, depth_to_x(H, z))
    pressure = reduced / np.sqrt(march.ranges)[:, None]
    return FieldGrid(ranges=np.asarray(march.ranges), depths=z, pressure=pressure, reference=reference)


def field_from_values(ranges, depths, reduced, reference=1.0):
    """FieldGrid from reduced-pressure samples already on a depth grid."""
    ranges = np.asarray(ranges, dtype=float)
    return FieldGrid(ranges=ranges, depths=np.asarray(depths, dtype=float),
                     pressure=np.asarray(reduced) / np.sqrt(ranges)[:, None], reference=reference)
