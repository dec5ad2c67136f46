"""Error index between two transmission-loss fields."""

import numpy as np

from ..errors import DimensionError, DomainError


def error_index(field, reference, exclusion_radius=0.0):
    """
    Mean |TL_field - TL_reference| in dB.

    Ranges below ``exclusion_radius`` are skipped, as are points where
    either pressure vanishes (the pressure-release boundaries).
    """
    if field.pressure.shape != reference.pressure.shape:
        raise DimensionError("field grids differ in shape")
    if not (np.allclose(field.ranges, reference.ranges) and np.allclose(field.depths, reference.depths)):
        raise DimensionError("field grids differ in ranges or depths")
    keep_r = field.ranges >= exclusion_radius
    a = field.tl[keep_r]
    b = reference.tl[keep_r]
    ok = np.isfinite(a) & np.isfinite(b)
    if not ok.any():
        raise DomainError("no grid points left after near-field exclusion")
    return float(np.mean(np.abs(a[ok] - b[ok])))
