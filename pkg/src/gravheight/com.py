"""Centre-of-mass trajectories from 2D keypoints.

The COM of a closed system follows the free-fall parabola whatever the limbs
do, and an affine projection commutes with the mass-weighted mean, so the
2D COM of the projected joints is the projection of the 3D COM.
"""

from dataclasses import dataclass
from importlib import resources

import numpy as np

from .errors import EmptyTrajectory, NoDetections, ParseError

COCO_JOINTS = (
    "nose",
    "left_eye",
    "right_eye",
    "left_ear",
    "right_ear",
    "left_shoulder",
    "right_shoulder",
    "left_elbow",
    "right_elbow",
    "left_wrist",
    "right_wrist",
    "left_hip",
    "right_hip",
    "left_knee",
    "right_knee",
    "left_ankle",
    "right_ankle",
)
NOSE = 0
LEFT_ANKLE = 15
RIGHT_ANKLE = 16


@dataclass(frozen=True)
class KeypointFrame:
    """One person's joints in image pixels (y grows downward) with scores."""

    joints: np.ndarray
    scores: np.ndarray

    def __post_init__(self):
        joints = np.asarray(self.joints, dtype=float)
        scores = np.asarray(self.scores, dtype=float)
        if joints.ndim != 2 or joints.shape[1] != 2:
            raise ValueError(f"joints must have shape (J, 2), got {joints.shape}")
        if scores.shape != (joints.shape[0],):
            raise ValueError("scores must have one entry per joint")
        if np.any(scores < 0):
            raise ValueError("scores must be non-negative")
        object.__setattr__(self, "joints", joints)
        object.__setattr__(self, "scores", scores)

    @property
    def n_joints(self):
        return self.joints.shape[0]


@dataclass(frozen=True, eq=False)
class PoseSequence:
    """Per-frame keypoints of a single subject.

    Parameters
    ----------
    joints : ndarray, shape (T, J, 2)
        Pixel coordinates, image convention (row axis grows downward).
    scores : ndarray, shape (T, J)
        Detector confidences; 0 marks a missing joint.
    fps : float
        Frame rate used to convert frame indices to seconds.
    image_height : float, optional
        Used to flip rows to an up-positive axis. Without it the rows are
        simply negated, which changes nothing but a constant offset.
    """

    joints: np.ndarray
    scores: np.ndarray
    fps: float
    image_height: float = None
    first_frame: int = 0

    def __post_init__(self):
        joints = np.asarray(self.joints, dtype=float)
        scores = np.asarray(self.scores, dtype=float)
        if joints.ndim != 3 or joints.shape[2] != 2:
            raise ValueError(f"joints must have shape (T, J, 2), got {joints.shape}")
        if scores.shape != joints.shape[:2]:
            raise ValueError("scores must have shape (T, J)")
        if np.any(scores < 0):
            raise ValueError("scores must be non-negative")
        if not self.fps > 0:
            raise ValueError(f"fps must be positive, got {self.fps!r}")
        object.__setattr__(self, "joints", joints)
        object.__setattr__(self, "scores", scores)
        object.__setattr__(self, "fps", float(self.fps))

    @classmethod
    def from_frames(cls, frames, fps, image_height=None, first_frame=0):
        frames = list(frames)
        if not frames:
            return cls(np.zeros((0, len(COCO_JOINTS), 2)), np.zeros((0, len(COCO_JOINTS))),
                       fps, image_height, first_frame)
        return cls(
            np.stack([f.joints for f in frames]),
            np.stack([f.scores for f in frames]),
            fps,
            image_height,
            first_frame,
        )

    def __len__(self):
        return self.joints.shape[0]

    def __getitem__(self, i):
        return KeypointFrame(self.joints[i], self.scores[i])

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    def __eq__(self, other):
        if not isinstance(other, PoseSequence):
            return NotImplemented
        return (
            self.fps == other.fps
            and self.image_height == other.image_height
            and self.first_frame == other.first_frame
            and np.array_equal(self.joints, other.joints, equal_nan=True)
            and np.array_equal(self.scores, other.scores)
        )

    @property
    def n_joints(self):
        return self.joints.shape[1]

    @property
    def times(self):
        return np.arange(len(self)) / self.fps

    def up_positive(self, y):
        """Map image rows to an up-positive vertical coordinate."""
        if self.image_height is None:
            return -y
        return self.image_height - y


@dataclass(frozen=True, eq=False)
class Trajectory2D:
    """Gap-tolerant 2D track; ``y`` is up-positive, invalid samples are NaN."""

    t: np.ndarray
    xy: np.ndarray
    valid: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float)
        xy = np.array(self.xy, dtype=float)
        valid = np.asarray(self.valid, dtype=bool)
        if xy.shape != (t.shape[0], 2) or valid.shape != t.shape:
            raise ValueError("t, xy and valid must describe the same number of samples")
        if t.size > 1 and np.any(np.diff(t) <= 0):
            raise ValueError("sample times must be strictly increasing")
        valid = valid & np.all(np.isfinite(xy), axis=1)
        xy[~valid] = np.nan
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "xy", xy)
        object.__setattr__(self, "valid", valid)

    @classmethod
    def from_points(cls, t, x, y, valid=None):
        t = np.asarray(t, dtype=float)
        if valid is None:
            valid = np.ones(t.shape, dtype=bool)
        return cls(t, np.column_stack([x, y]), valid)

    def __len__(self):
        return self.t.shape[0]

    @property
    def x(self):
        return self.xy[:, 0]

    @property
    def y(self):
        return self.xy[:, 1]

    def scaled(self, s):
        return Trajectory2D(self.t, self.xy * s, self.valid)


class MassTable:
    """Per-joint mass fractions, normalised to sum to one."""

    def __init__(self, weights):
        w = np.asarray(weights, dtype=float)
        if w.ndim != 1 or w.size == 0:
            raise ValueError("mass table needs a 1D, non-empty weight vector")
        if np.any(w < 0) or not np.all(np.isfinite(w)):
            raise ValueError("mass fractions must be finite and non-negative")
        total = w.sum()
        if total <= 0:
            raise ValueError("mass fractions must not all be zero")
        self.weights = w / total

    def __len__(self):
        return self.weights.size

    def __repr__(self):
        return f"MassTable({self.weights.tolist()!r})"

    @classmethod
    def from_text(cls, text):
        """Parse ``index weight`` lines; ``#`` starts a comment."""
        entries = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(f"mass table line {lineno}: expected 'index weight', got {raw!r}")
            try:
                idx, weight = int(parts[0]), float(parts[1])
            except ValueError as exc:
                raise ParseError(f"mass table line {lineno}: {exc}") from None
            if idx in entries:
                raise ParseError(f"mass table line {lineno}: duplicate joint index {idx}")
            entries[idx] = weight
        if not entries:
            raise ParseError("mass table is empty")
        if sorted(entries) != list(range(len(entries))):
            raise ParseError("mass table indices must cover 0..J-1 without gaps")
        try:
            return cls([entries[i] for i in range(len(entries))])
        except ValueError as exc:
            raise ParseError(str(exc)) from None

    @classmethod
    def from_file(cls, path):
        with open(path) as fh:
            return cls.from_text(fh.read())

    @classmethod
    def default(cls):
        text = resources.files("gravheight").joinpath("data/default_masses.txt").read_text()
        return cls.from_text(text)

    def to_text(self):
        return "".join(f"{i} {w!r}\n" for i, w in enumerate(self.weights.tolist()))


def com_point(frame, masses):
    """Mass-weighted mean of the frame's joint positions."""
    joints = frame.joints if isinstance(frame, KeypointFrame) else np.asarray(frame, dtype=float)
    if joints.shape[0] != len(masses):
        raise ValueError(f"mass table has {len(masses)} entries, frame has {joints.shape[0]} joints")
    return masses.weights @ joints


def frame_validity(scores, joints, conf_threshold=2.0):
    """Frames usable for the COM: no missing joint and mean score >= threshold."""
    scores = np.asarray(scores, dtype=float)
    joints = np.asarray(joints, dtype=float)
    complete = np.all(scores > 0, axis=-1) & np.all(np.isfinite(joints), axis=(-2, -1))
    return complete & (scores.mean(axis=-1) >= conf_threshold)


def com_trajectory(seq, masses, conf_threshold=2.0):
    """COM track of a pose sequence, one sample per frame at ``t = i / fps``.

    A frame is dropped (marked invalid) when any joint is missing or its
    mean joint score is below ``conf_threshold``.

    Raises
    ------
    EmptyTrajectory
        If no frame survives.
    """
    if seq.n_joints != len(masses):
        raise ValueError(f"mass table has {len(masses)} entries, sequence has {seq.n_joints} joints")
    valid = frame_validity(seq.scores, seq.joints, conf_threshold)
    if not valid.any():
        raise EmptyTrajectory("no frame passes the confidence rule")
    xy = np.full((len(seq), 2), np.nan)
    xy[valid] = masses.weights @ seq.joints[valid]
    xy[:, 1] = seq.up_positive(xy[:, 1])
    return Trajectory2D(seq.times, xy, valid)


def select_primary_person(detections):
    """Pick the detection with the largest joint bounding box.

    Only joints with a positive score and finite coordinates count toward
    the box. Ties go to the lowest index.
    """
    detections = list(detections)
    if not detections:
        raise NoDetections("no person detected in frame")
    best, best_area = 0, -1.0
    for i, det in enumerate(detections):
        ok = (det.scores > 0) & np.all(np.isfinite(det.joints), axis=1)
        if ok.any():
            pts = det.joints[ok]
            w, h = np.ptp(pts[:, 0]), np.ptp(pts[:, 1])
            area = w * h
        else:
            area = -1.0
        if area > best_area:
            best, best_area = i, area
    return detections[best]
