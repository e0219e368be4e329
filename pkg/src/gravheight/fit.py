"""Image acceleration from a flight segment.

The curve method fits ``y(t) = c2 t^2 + c1 t + c0`` and reads the
acceleration off as ``2 c2``. The distance method uses only the apex and
the last airborne sample, relying on zero vertical velocity at the apex.
"""

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .com import Trajectory2D
from .errors import DegenerateDesign, NoConsensus, ZeroDuration

RANSAC_ITERATIONS = 500
RANSAC_TOLERANCE = 3.0


@dataclass(frozen=True)
class ParabolaFit:
    """Quadratic ``y = c2 t^2 + c1 t + c0`` fitted to one coordinate axis."""

    c2: float
    c1: float
    c0: float
    inlier_mask: np.ndarray
    rms_residual: float

    @property
    def coeffs(self):
        return (self.c2, self.c1, self.c0)

    @property
    def acceleration(self):
        return 2.0 * self.c2

    @property
    def n_inliers(self):
        return int(np.count_nonzero(self.inlier_mask))

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        return (self.c2 * t + self.c1) * t + self.c0


def _as_samples(samples):
    arr = np.asarray(samples, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"samples must be (t, y) pairs, got shape {arr.shape}")
    return arr[:, 0], arr[:, 1]


def _centering(t):
    mid = 0.5 * (t.min() + t.max())
    half = 0.5 * (t.max() - t.min())
    return mid, (half if half > 0 else 1.0)


def _solve_centered(tc, y):
    design = np.column_stack([tc**2, tc, np.ones_like(tc)])
    coef, _, rank, _ = np.linalg.lstsq(design, y, rcond=None)
    if rank < 3:
        raise DegenerateDesign(f"quadratic design has rank {rank} < 3")
    return coef


def _uncenter(b, mid, half):
    b2, b1, b0 = b / np.array([half**2, half, 1.0])
    return b2, b1 - 2.0 * b2 * mid, (b2 * mid - b1) * mid + b0


def _lsq(t, y):
    if t.size < 3 or np.unique(t).size < 3:
        raise DegenerateDesign(f"need at least 3 distinct sample times, got {np.unique(t).size}")
    mid, half = _centering(t)
    return _uncenter(_solve_centered((t - mid) / half, y), mid, half)


def _fit_result(t, y, mask, coeffs):
    c2, c1, c0 = (float(c) for c in coeffs)
    resid = y[mask] - ((c2 * t[mask] + c1) * t[mask] + c0)
    rms = float(np.sqrt(np.mean(resid**2)))
    return ParabolaFit(c2, c1, c0, mask, rms)


def fit_parabola_lsq(samples):
    """Least-squares parabola through ``(t, y)`` samples.

    Time is shifted to the segment midpoint and scaled to ``[-1, 1]`` before
    solving; coefficients are reported for the original time axis.
    """
    t, y = _as_samples(samples)
    coeffs = _lsq(t, y)
    return _fit_result(t, y, np.ones(t.size, dtype=bool), coeffs)


def fit_parabola_ransac(samples, iterations=RANSAC_ITERATIONS, inlier_tol=RANSAC_TOLERANCE, seed=0):
    """Consensus parabola fit robust to isolated detection errors.

    Each hypothesis interpolates three samples; the hypothesis with the most
    samples within ``inlier_tol`` (vertical residual) wins, ties going to the
    earliest one. The returned coefficients are the least-squares fit over
    the winner's inliers. When ``iterations`` covers every 3-subset they are
    enumerated instead of drawn, otherwise ``seed`` (an int or a numpy
    ``Generator``) drives the draws.

    With fewer than four samples there is nothing to vote on and the plain
    least-squares fit is returned.

    Raises
    ------
    NoConsensus
        If the best hypothesis has fewer than four inliers.
    """
    t, y = _as_samples(samples)
    n = t.size
    if n < 4:
        return fit_parabola_lsq(samples)
    if np.unique(t).size < 3:
        raise DegenerateDesign("need at least 3 distinct sample times")
    mid, half = _centering(t)
    tc = (t - mid) / half

    if comb(n, 3) <= iterations:
        draws = combinations(range(n), 3)
    else:
        rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
        draws = (rng.choice(n, size=3, replace=False) for _ in range(iterations))

    best_mask, best_count = None, -1
    for idx in draws:
        idx = np.asarray(idx)
        sub = tc[idx]
        if np.unique(sub).size < 3:
            continue
        b = np.linalg.solve(np.vander(sub, 3), y[idx])
        resid = np.abs(y - ((b[0] * tc + b[1]) * tc + b[2]))
        mask = resid <= inlier_tol
        count = int(np.count_nonzero(mask))
        if count > best_count:
            best_mask, best_count = mask, count
    if best_count < 4:
        raise NoConsensus(f"best hypothesis has {max(best_count, 0)} inliers, need at least 4")
    coeffs = _lsq(t[best_mask], y[best_mask])
    return _fit_result(t, y, best_mask, coeffs)


def segment_samples(traj, segment, axis=1):
    """``(t, value)`` pairs of the valid samples inside ``segment``."""
    idx = segment.indices
    idx = idx[traj.valid[idx]]
    return np.column_stack([traj.t[idx], traj.xy[idx, axis]])


def acceleration_distance_based(traj, segment, fps=None):
    """Acceleration from the apex-to-end drop, ``2 (y_m - y_e) / dt^2``.

    ``dt`` is ``(end - peak) / fps``; without ``fps`` the sample times are
    used. The result is positive for a downward fall. An apex that falls
    between two frames biases the estimate.
    """
    m, e = segment.peak, segment.end
    if e == m:
        raise ZeroDuration(f"segment ends at its peak (frame {m})")
    if not (traj.valid[m] and traj.valid[e]):
        raise ValueError("peak and end samples must be valid")
    dt = (e - m) / fps if fps else traj.t[e] - traj.t[m]
    return 2.0 * (traj.y[m] - traj.y[e]) / dt**2


def acceleration_vector(traj, segment):
    """``(a_x, a_y)`` from independent parabola fits to both axes."""
    ax = fit_parabola_lsq(segment_samples(traj, segment, axis=0)).acceleration
    ay = fit_parabola_lsq(segment_samples(traj, segment, axis=1)).acceleration
    return np.array([ax, ay])


def angle_to_vertical(accel):
    """Rotation (radians, counter-clockwise) taking ``accel`` onto ``-y``."""
    ax, ay = accel
    if ax == 0.0 and ay < 0:
        return 0.0
    theta = -0.5 * np.pi - np.arctan2(ay, ax)
    return float((theta + np.pi) % (2 * np.pi) - np.pi)


def rotate_trajectory(traj, angle):
    if angle == 0.0:
        return traj
    c, s = np.cos(angle), np.sin(angle)
    rot = np.array([[c, -s], [s, c]])
    return Trajectory2D(traj.t, traj.xy @ rot.T, traj.valid)


def rotate_to_max_acceleration(traj, segment):
    """Rotate ``traj`` so the segment's fitted acceleration points straight down."""
    return rotate_trajectory(traj, angle_to_vertical(acceleration_vector(traj, segment)))
