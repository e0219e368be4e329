"""Run configuration shared by the estimator, the pipeline and the CLI."""

import json
from dataclasses import asdict, dataclass, fields, replace

from .errors import ParseError
from .events import SEGMENT_MODES
from .fit import RANSAC_ITERATIONS, RANSAC_TOLERANCE
from .physics import G_DEFAULT, NOSE_ANKLE_FACTOR

CURVE = "curve"
DISTANCE = "distance"
METHODS = (CURVE, DISTANCE)
STANDING_WINDOWS = ("start", "start_end")
SEGMENT_ERROR_POLICIES = ("skip", "raise")


@dataclass(frozen=True)
class RunConfig:
    fps: float = None
    method: str = CURVE
    segment_mode: str = "on_spot"
    ransac: bool = False
    ransac_iterations: int = RANSAC_ITERATIONS
    ransac_tol: float = RANSAC_TOLERANCE
    conf_threshold: float = 2.0
    fraction: float = 0.15
    c: float = NOSE_ANKLE_FACTOR
    g: float = G_DEFAULT
    mass_table: str = None
    seed: int = 0
    half_window: int = 10
    floor_frames: int = 100
    standing_frames: int = 100
    standing_window: str = "start"
    rotate: bool = False
    min_rise_fraction: float = 0.25
    on_segment_error: str = "skip"

    def __post_init__(self):
        positive = ("ransac_iterations", "ransac_tol", "c", "g", "half_window", "floor_frames", "standing_frames")
        for name in positive:
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)!r}")
        if self.fps is not None and not self.fps > 0:
            raise ValueError(f"fps must be positive, got {self.fps!r}")
        if self.conf_threshold < 0:
            raise ValueError("conf_threshold must be non-negative")
        if not 0 <= self.fraction < 1:
            raise ValueError("fraction must lie in [0, 1)")
        if not 0 <= self.min_rise_fraction <= 1:
            raise ValueError("min_rise_fraction must lie in [0, 1]")
        choices = {
            "method": METHODS,
            "segment_mode": SEGMENT_MODES,
            "standing_window": STANDING_WINDOWS,
            "on_segment_error": SEGMENT_ERROR_POLICIES,
        }
        for name, allowed in choices.items():
            if getattr(self, name) not in allowed:
                raise ValueError(f"{name} must be one of {allowed}, got {getattr(self, name)!r}")

    def to_dict(self):
        return asdict(self)

    def updated(self, **changes):
        changes = {k: v for k, v in changes.items() if v is not None}
        return replace(self, **changes)

    @classmethod
    def from_dict(cls, data):
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ParseError(f"unknown config keys: {sorted(unknown)}")
        try:
            return cls(**data)
        except (TypeError, ValueError) as exc:
            raise ParseError(f"invalid config: {exc}") from None

    @classmethod
    def from_file(cls, path, base=None):
        """Read a JSON object of fields; keys it omits keep ``base``'s values."""
        try:
            with open(path) as fh:
                data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from None
        if not isinstance(data, dict):
            raise ParseError(f"{path}: config must be a JSON object")
        if base is not None:
            data = {**base.to_dict(), **data}
        return cls.from_dict(data)
