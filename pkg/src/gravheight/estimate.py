"""End-to-end height estimation and error reporting."""

from dataclasses import dataclass, field, replace

import numpy as np

from . import events
from .com import LEFT_ANKLE, NOSE, RIGHT_ANKLE, MassTable, com_trajectory, frame_validity
from .config import CURVE, RunConfig
from .errors import EmptyInput, GravHeightError, NoFlightDetected, NoValidSamples
from .fit import (
    acceleration_distance_based,
    acceleration_vector,
    angle_to_vertical,
    fit_parabola_lsq,
    fit_parabola_ransac,
    rotate_trajectory,
    segment_samples,
)
from .physics import (
    NOSE_ANKLE_FACTOR_SD,
    HeightKind,
    HeightMeasurement,
    conversion_factor,
    pixel_to_metric_height,
)

POPULATION_MEAN_HEIGHT = 1.689


@dataclass(frozen=True)
class SegmentEstimate:
    segment_id: int
    start: int
    end: int
    peak: int
    a_px: float
    q: float
    h_px: float
    h: float
    n_samples: int
    n_inliers: int
    rms_residual: float


@dataclass(frozen=True)
class HeightEstimate:
    """Per-segment heights and their median.

    ``h_px`` is the pixel span the per-segment ``q`` values were applied to;
    ``correction_c`` is 1 for rigid objects. ``trajectory`` is the
    (possibly de-rotated) track the segments index into and ``inliers``
    flags its samples that entered a used fit.
    """

    per_segment: tuple
    aggregate_h: float
    aggregate_q: float
    h_px: float
    method: str
    correction_c: float
    rotation_angle: float = 0.0
    warnings: tuple = field(default_factory=tuple)
    trajectory: object = field(default=None, repr=False, compare=False)
    inliers: np.ndarray = field(default=None, repr=False, compare=False)

    @property
    def n_segments(self):
        return len(self.per_segment)

    @property
    def systematic_sd(self):
        """Height spread implied by the nose-ankle factor's SD (0 for rigid objects)."""
        if self.correction_c == 1.0:
            return 0.0
        return self.aggregate_h * NOSE_ANKLE_FACTOR_SD / self.correction_c


def _nose_ankle_vectors(seq, angle=0.0):
    nose = seq.joints[:, NOSE]
    ankle = 0.5 * (seq.joints[:, LEFT_ANKLE] + seq.joints[:, RIGHT_ANKLE])
    # rows grow downward, so flip the y component to up-positive
    vec = np.column_stack([nose[:, 0] - ankle[:, 0], ankle[:, 1] - nose[:, 1]])
    if angle:
        c, s = np.cos(angle), np.sin(angle)
        vec = vec @ np.array([[c, -s], [s, c]]).T
    needed = seq.scores[:, [NOSE, LEFT_ANKLE, RIGHT_ANKLE]]
    ok = np.all(needed > 0, axis=1) & np.all(np.isfinite(vec), axis=1)
    return np.abs(vec[:, 1]), ok


def measure_standing_height_px(seq, n_frames=100, angle=0.0, window="start"):
    """Median vertical nose-to-ankle span over the opening frames.

    The ankle point is the mean of both ankles. ``angle`` rotates the image
    first (as done for rolled cameras). With ``window="start_end"`` the
    closing frames are measured too and the two medians are averaged, which
    compensates for a subject that ends up at a different depth.
    """
    spans, ok = _nose_ankle_vectors(seq, angle)

    def median_of(sel):
        vals = spans[sel][ok[sel]]
        if vals.size == 0:
            raise NoValidSamples(f"no frame with nose and ankles among the {n_frames} frames measured")
        return float(np.median(vals))

    n = min(n_frames, len(seq))
    if n == 0:
        raise NoValidSamples("empty sequence")
    head = median_of(slice(0, n))
    if window == "start":
        return head
    if window == "start_end":
        return 0.5 * (head + median_of(slice(len(seq) - n, len(seq))))
    raise ValueError(f"unknown standing window {window!r}")


def _load_masses(masses, config):
    if masses is not None:
        return masses
    if config.mass_table:
        return MassTable.from_file(config.mass_table)
    return MassTable.default()


def _detect(traj, config):
    return events.detect_flight_segments(
        traj,
        mode=config.segment_mode,
        half_window=config.half_window,
        floor_frames=config.floor_frames,
        fraction=config.fraction,
        min_rise_fraction=config.min_rise_fraction,
    )


def flight_segments(traj, config):
    """Detect flight segments, optionally after de-rotating the trajectory.

    The rotation angle is the direction of the summed unit acceleration
    vectors of a first, upright detection pass, each weighted by its
    number of valid samples so that short noise-induced segments barely
    count.

    Returns ``(trajectory, angle, segments, notes)``.
    """
    segments, skipped = _detect(traj, config)
    notes = [f"peak at frame {m} skipped: {why}" for m, why in skipped]
    angle = 0.0
    if config.rotate and segments:
        total = np.zeros(2)
        for seg in segments:
            try:
                acc = acceleration_vector(traj, seg)
            except GravHeightError:
                continue
            norm = np.hypot(*acc)
            if norm > 0:
                total += np.count_nonzero(traj.valid[seg.indices]) * acc / norm
        if np.any(total):
            angle = angle_to_vertical(total)
            traj = rotate_trajectory(traj, angle)
            segments, skipped = _detect(traj, config)
            notes = [f"peak at frame {m} skipped: {why}" for m, why in skipped]
    return traj, angle, segments, notes


def segment_acceleration(traj, segment, config):
    """Downward image acceleration of one segment and its parabola fit (curve method)."""
    if config.method == CURVE:
        samples = segment_samples(traj, segment)
        if config.ransac:
            fit = fit_parabola_ransac(samples, config.ransac_iterations, config.ransac_tol, config.seed)
        else:
            fit = fit_parabola_lsq(samples)
        return -fit.acceleration, fit
    return acceleration_distance_based(traj, segment), None


def estimate_from_segments(traj, segments, measurement, config, angle=0.0, notes=()):
    """Convert each segment's acceleration to ``q`` and apply it to ``measurement``."""
    notes = list(notes)
    if not segments:
        raise NoFlightDetected("no flight phase found in trajectory")
    results = []
    inliers = np.zeros(len(traj), dtype=bool)
    for sid, seg in enumerate(segments):
        try:
            a_px, fit = segment_acceleration(traj, seg, config)
            q = conversion_factor(a_px, config.g)
        except GravHeightError as exc:
            if config.on_segment_error == "raise":
                raise type(exc)(f"segment {sid} (frames {seg.start}-{seg.end}): {exc}") from exc
            notes.append(f"segment {sid} (frames {seg.start}-{seg.end}) dropped: {exc.name}: {exc}")
            continue
        idx = seg.indices[traj.valid[seg.indices]]
        n = idx.size
        n_in = fit.n_inliers if fit is not None else n
        inliers[idx] = fit.inlier_mask if fit is not None else True
        if fit is not None and config.ransac and n_in < n:
            notes.append(f"segment {sid}: RANSAC rejected {n - n_in} of {n} samples")
        results.append(
            SegmentEstimate(
                segment_id=sid,
                start=seg.start,
                end=seg.end,
                peak=seg.peak,
                a_px=float(a_px),
                q=q.q,
                h_px=measurement.h_px,
                h=float(pixel_to_metric_height(measurement, q)),
                n_samples=n,
                n_inliers=n_in,
                rms_residual=fit.rms_residual if fit is not None else float("nan"),
            )
        )
    if not results:
        raise NoFlightDetected("every detected flight segment failed: " + "; ".join(notes))
    correction = measurement.correction_c if measurement.kind is HeightKind.NOSE_ANKLE else 1.0
    return HeightEstimate(
        per_segment=tuple(results),
        aggregate_h=float(np.median([r.h for r in results])),
        aggregate_q=float(np.median([r.q for r in results])),
        h_px=measurement.h_px,
        method=config.method,
        correction_c=correction,
        rotation_angle=angle,
        warnings=tuple(notes),
        trajectory=traj,
        inliers=inliers,
    )


def estimate_height(seq, masses=None, config=None):
    """Metric height of the person in ``seq``.

    COM track, (optional) de-rotation, flight detection, per-flight
    acceleration and ``q``, nose-to-ankle span scaled by ``q`` and the
    correction factor, median over flights.

    Raises
    ------
    NoFlightDetected
        If no usable flight phase exists.
    """
    config = config or RunConfig()
    if config.fps is not None:
        seq = replace(seq, fps=config.fps)
    masses = _load_masses(masses, config)
    traj = com_trajectory(seq, masses, config.conf_threshold)
    traj, angle, segments, notes = flight_segments(traj, config)
    excluded = int(np.count_nonzero(~frame_validity(seq.scores, seq.joints, config.conf_threshold)))
    if excluded:
        notes.insert(0, f"{excluded} of {len(seq)} frames excluded by the confidence rule")
    if not segments:
        raise NoFlightDetected("no flight phase found in COM trajectory")
    h_px = measure_standing_height_px(seq, config.standing_frames, angle, config.standing_window)
    measurement = HeightMeasurement(h_px, HeightKind.NOSE_ANKLE, config.c)
    return estimate_from_segments(traj, segments, measurement, config, angle, notes)


def estimate_rigid_size(center_traj, size_px, config=None):
    """Metric size of a rigid object from its centre track and pixel size.

    Same ``q`` pipeline as for persons, without the nose-ankle correction.
    """
    config = config or RunConfig()
    traj, angle, segments, notes = flight_segments(center_traj, config)
    measurement = HeightMeasurement(size_px, HeightKind.TOTAL)
    return estimate_from_segments(traj, segments, measurement, config, angle, notes)


@dataclass(frozen=True)
class ErrorReport:
    """Accuracy (MAE) and bias (ME) in cm with sample SDs, plus relative versions in %."""

    n: int
    mae: float
    me: float
    sd_abs: float
    sd_signed: float
    mae_rel: float
    me_rel: float
    sd_abs_rel: float
    sd_signed_rel: float


def _sd(x):
    return float(np.std(x, ddof=1)) if x.size > 1 else 0.0


def compute_error_report(predictions):
    """Error statistics over ``(h_pred, h_true)`` pairs given in metres."""
    arr = np.asarray(list(predictions), dtype=float)
    if arr.size == 0:
        raise EmptyInput("no predictions to evaluate")
    arr = arr.reshape(-1, 2)
    err = (arr[:, 0] - arr[:, 1]) * 100.0
    rel = err / (arr[:, 1] * 100.0) * 100.0
    return ErrorReport(
        n=err.size,
        mae=float(np.mean(np.abs(err))),
        me=float(np.mean(err)),
        sd_abs=_sd(np.abs(err)),
        sd_signed=_sd(err),
        mae_rel=float(np.mean(np.abs(rel))),
        me_rel=float(np.mean(rel)),
        sd_abs_rel=_sd(np.abs(rel)),
        sd_signed_rel=_sd(rel),
    )
