"""Metric height and size from monocular video, using gravity as the ruler."""

from .com import (
    COCO_JOINTS,
    KeypointFrame,
    MassTable,
    PoseSequence,
    Trajectory2D,
    com_trajectory,
    select_primary_person,
)
from .config import RunConfig
from .errors import GravHeightError
from .estimate import (
    ErrorReport,
    HeightEstimate,
    compute_error_report,
    estimate_height,
    estimate_rigid_size,
    measure_standing_height_px,
)
from .estimators import GravityScale, HeightEstimator, ParabolaRegressor
from .events import FlightSegment, detect_flight_segments, find_peaks
from .fit import ParabolaFit, fit_parabola_lsq, fit_parabola_ransac
from .physics import FreeFallParams, conversion_factor, free_fall_position, pixel_to_metric_height

__version__ = "0.1.0"

__all__ = [
    "COCO_JOINTS",
    "ErrorReport",
    "FlightSegment",
    "FreeFallParams",
    "GravHeightError",
    "GravityScale",
    "HeightEstimate",
    "HeightEstimator",
    "KeypointFrame",
    "MassTable",
    "ParabolaFit",
    "ParabolaRegressor",
    "PoseSequence",
    "RunConfig",
    "Trajectory2D",
    "com_trajectory",
    "compute_error_report",
    "conversion_factor",
    "detect_flight_segments",
    "estimate_height",
    "estimate_rigid_size",
    "find_peaks",
    "fit_parabola_lsq",
    "fit_parabola_ransac",
    "free_fall_position",
    "measure_standing_height_px",
    "pixel_to_metric_height",
    "select_primary_person",
]
