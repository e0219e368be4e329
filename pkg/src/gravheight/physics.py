"""Free-fall kinematics and the gravity-based pixel-to-metre conversion.

A body in free fall follows ``p(t) = g t^2 / 2 + v0 t + p0``. Any affine
projection of that motion is again a parabola whose quadratic term is the
projected gravity, so the ratio ``q = g / a_px`` between the known metric
acceleration and the observed image acceleration converts image lengths
along the gravity direction to metres without camera calibration.
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import NonPositiveAcceleration

G_DEFAULT = 9.81
NOSE_ANKLE_FACTOR = 1.17
NOSE_ANKLE_FACTOR_SD = 0.03


@dataclass(frozen=True)
class FreeFallParams:
    """Initial state and gravity vector of a ballistic body (SI units)."""

    p0: np.ndarray = field(default_factory=lambda: np.zeros(3))
    v0: np.ndarray = field(default_factory=lambda: np.zeros(3))
    g_vec: np.ndarray = field(default_factory=lambda: np.array([0.0, -G_DEFAULT, 0.0]))

    def __post_init__(self):
        for name in ("p0", "v0", "g_vec"):
            arr = np.asarray(getattr(self, name), dtype=float)
            if arr.shape != (3,):
                raise ValueError(f"{name} must be a 3-vector, got shape {arr.shape}")
            object.__setattr__(self, name, arr)

    @property
    def g(self):
        return float(np.linalg.norm(self.g_vec))


def free_fall_position(params, t):
    """Position of the body after ``t`` seconds.

    ``t`` may be a scalar or an array of times; the result has shape
    ``(3,)`` or ``(len(t), 3)`` respectively.
    """
    t = np.asarray(t, dtype=float)
    tt = t[..., None]
    return 0.5 * params.g_vec * tt**2 + params.v0 * tt + params.p0


@dataclass(frozen=True)
class ConversionFactor:
    """Metres per pixel along the gravity direction.

    ``q`` is stored next to the quantities it was derived from so reports
    can show all three; ``q == g / a_px`` always holds.
    """

    q: float
    a_px: float
    g: float


def conversion_factor(a_px, g=G_DEFAULT):
    """Return ``q = g / a_px`` for a gravity-oriented image acceleration.

    Raises
    ------
    NonPositiveAcceleration
        If ``a_px`` is not strictly positive, i.e. no downward acceleration
        was measured.
    """
    a_px = float(a_px)
    if not np.isfinite(a_px) or a_px <= 0:
        raise NonPositiveAcceleration(
            f"image acceleration must be positive after orientation, got {a_px!r} px/s^2"
        )
    if g <= 0:
        raise ValueError(f"g must be positive, got {g!r}")
    return ConversionFactor(q=float(g) / a_px, a_px=a_px, g=float(g))


class HeightKind(str, Enum):
    TOTAL = "total"
    NOSE_ANKLE = "nose_ankle"


@dataclass(frozen=True)
class HeightMeasurement:
    """An image-space height in pixels.

    ``NOSE_ANKLE`` spans are scaled by ``correction_c`` to reach head-to-heel
    height; ``TOTAL`` spans are used as is.
    """

    h_px: float
    kind: HeightKind = HeightKind.TOTAL
    correction_c: float = NOSE_ANKLE_FACTOR

    def __post_init__(self):
        if not self.h_px > 0:
            raise ValueError(f"h_px must be positive, got {self.h_px!r}")
        if not self.correction_c > 0:
            raise ValueError(f"correction_c must be positive, got {self.correction_c!r}")
        object.__setattr__(self, "kind", HeightKind(self.kind))


def pixel_to_metric_height(measurement, q):
    """Translate a pixel height to metres with conversion factor ``q``."""
    q_val = q.q if isinstance(q, ConversionFactor) else float(q)
    h = measurement.h_px * q_val
    if measurement.kind is HeightKind.NOSE_ANKLE:
        h *= measurement.correction_c
    return h
