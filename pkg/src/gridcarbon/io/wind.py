"""Wind speed to per-unit turbine output."""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike

from ..errors import InputError

CUT_IN_MPS = 3.0
CUT_OUT_MPS = 15.0


def wind_to_per_unit(
    speed_mps: ArrayLike, rated_speed: float | None = None
) -> np.ndarray | float:
    """Per-unit power of a turbine at the given wind speeds.

    Output follows (v^3 - 3^3) / (15^3 - 3^3) between cut-in (3 m/s) and
    cut-out (15 m/s) and is zero outside. With ``rated_speed`` the curve is
    normalized at that speed instead and held at 1.0 from there to cut-out.

    Args:
        speed_mps: Scalar or array of wind speeds, m/s.
        rated_speed: Optional rated speed in (3, 15].

    Returns:
        A float for scalar input, otherwise an array of the same shape.
    """
    v = np.asarray(speed_mps, dtype=float)
    if np.any(v < 0):
        raise InputError("wind speed must be non-negative")
    top = CUT_OUT_MPS if rated_speed is None else float(rated_speed)
    if not CUT_IN_MPS < top <= CUT_OUT_MPS:
        raise InputError(f"rated speed must lie in ({CUT_IN_MPS}, {CUT_OUT_MPS}]")
    cubic = (np.minimum(v, top) ** 3 - CUT_IN_MPS**3) / (top**3 - CUT_IN_MPS**3)
    power = np.where((v >= CUT_IN_MPS) & (v <= CUT_OUT_MPS), cubic, 0.0)
    return float(power) if power.ndim == 0 else power
