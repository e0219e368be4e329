"""Flight-phase detection on an up-positive COM trajectory.

Two selection rules are provided. The on-spot rule keeps samples that sit at
least a fraction of the jump height above a floor level estimated from the
opening frames. The lateral rule does without a floor: on each side of a
peak it keeps the samples in the upper half between the peak and that
side's nearest local minimum.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NoValidSamples, SegmentTooShort

ON_SPOT = "on_spot"
LATERAL = "lateral"
SEGMENT_MODES = (ON_SPOT, LATERAL)


@dataclass(frozen=True)
class FlightSegment:
    """Inclusive index interval ``[start, end]`` around peak ``peak``."""

    start: int
    end: int
    peak: int
    floor_y: float = None

    def __post_init__(self):
        if not self.start <= self.peak <= self.end:
            raise ValueError(f"need start <= peak <= end, got {self.start}, {self.peak}, {self.end}")
        if self.end - self.start < 2:
            raise ValueError("a flight segment needs at least three samples")

    def __len__(self):
        return self.end - self.start + 1

    @property
    def indices(self):
        return np.arange(self.start, self.end + 1)


def _masked(traj):
    return np.where(traj.valid, traj.y, -np.inf)


def find_peaks(traj, half_window=10):
    """Indices of valid samples that dominate their ``±half_window`` neighbourhood.

    A sample is a peak when it is strictly above every valid sample before it
    in the window and not below any valid sample after it, so a flat top
    reports only its first index. A flat stretch that fills the whole right
    half-window is stance, not a peak. Windows are truncated at the ends and
    invalid samples are ignored.
    """
    y = _masked(traj)
    valid = traj.valid
    n = y.size
    is_peak = valid.copy()
    has_right = np.zeros(n, dtype=bool)
    drops = np.zeros(n, dtype=bool)
    for k in range(1, half_window + 1):
        if k >= n:
            break
        # left neighbour at distance k must be strictly lower
        is_peak[k:] &= y[:-k] < y[k:]
        # right neighbour at distance k must not be higher
        is_peak[:-k] &= y[k:] <= y[:-k]
        has_right[:-k] |= valid[k:]
        drops[:-k] |= valid[k:] & (y[k:] < y[:-k])
    is_peak &= drops | ~has_right
    return [int(i) for i in np.flatnonzero(is_peak)]


def estimate_floor(traj, n_frames=100):
    """Median height of the valid samples among the first ``n_frames``."""
    head = slice(0, min(n_frames, len(traj)))
    vals = traj.y[head][traj.valid[head]]
    if vals.size == 0:
        raise NoValidSamples(f"no valid sample in the first {n_frames} frames")
    return float(np.median(vals))


def _grow(traj, m, keep):
    """Largest contiguous run of valid samples around ``m`` where ``keep`` holds."""
    ok = traj.valid & keep
    s = m
    while s > 0 and ok[s - 1]:
        s -= 1
    e = m
    n = len(traj)
    while e < n - 1 and ok[e + 1]:
        e += 1
    return s, e


def _check_peak(traj, m):
    if not 0 <= m < len(traj) or not traj.valid[m]:
        raise ValueError(f"peak index {m} is not a valid sample")


def select_flight_segment(traj, peak, floor_y, fraction=0.15):
    """Samples around ``peak`` at least ``fraction`` of the jump above the floor.

    Raises
    ------
    SegmentTooShort
        If fewer than three samples qualify.
    """
    _check_peak(traj, peak)
    y = traj.y
    if not y[peak] > floor_y:
        raise ValueError(f"peak at {y[peak]!r} is not above the floor {floor_y!r}")
    thr = floor_y + fraction * (y[peak] - floor_y)
    with np.errstate(invalid="ignore"):
        keep = (y >= thr) & (y > floor_y)
    s, e = _grow(traj, peak, keep)
    if e - s < 2:
        raise SegmentTooShort(f"only {e - s + 1} samples above the {fraction:.0%} line around frame {peak}")
    return FlightSegment(s, e, peak, float(floor_y))


def _window_minima(traj, half_window):
    """Valid samples not above any valid sample within ``±half_window``."""
    y = np.where(traj.valid, traj.y, np.inf)
    n = y.size
    is_min = traj.valid.copy()
    for k in range(1, min(half_window, n - 1) + 1):
        is_min[k:] &= y[k:] <= y[:-k]
        is_min[:-k] &= y[:-k] <= y[k:]
    return is_min


def side_minima(traj, peak, half_window=10, bounds=None):
    """Values of the nearest local minimum left and right of ``peak``.

    A local minimum is a valid sample that no valid sample within
    ``±half_window`` undercuts, the same neighbourhood that defines peaks,
    so single-frame noise dips next to the apex do not count. ``bounds``
    ``(lo, hi)`` limits the search to samples strictly between them,
    normally the neighbouring peaks. A side with no such minimum falls back
    to its lowest valid sample; a trajectory end therefore counts as a
    minimum when the signal falls all the way to it.
    """
    _check_peak(traj, peak)
    lo, hi = bounds if bounds is not None else (-1, len(traj))
    is_min = _window_minima(traj, half_window)
    y = traj.y
    out = []
    for side in (np.arange(lo + 1, peak), np.arange(peak + 1, hi)):
        side = side[traj.valid[side]]
        if side.size == 0:
            out.append(float(y[peak]))
            continue
        cand = side[is_min[side]]
        if cand.size:
            i = cand[-1] if side[0] < peak else cand[0]
        else:
            i = side[np.argmin(y[side])]
        out.append(float(y[i]))
    return out[0], out[1]


def select_flight_segment_lateral(traj, peak, half_window=10, bounds=None):
    """Upper half between ``peak`` and the neighbouring minimum, per side."""
    v_left, v_right = side_minima(traj, peak, half_window, bounds)
    y = traj.y
    ym = y[peak]
    cut_left = v_left + 0.5 * (ym - v_left)
    cut_right = v_right + 0.5 * (ym - v_right)
    n = len(traj)
    side_cut = np.where(np.arange(n) < peak, cut_left, cut_right)
    with np.errstate(invalid="ignore"):
        keep = y >= side_cut
    s, e = _grow(traj, peak, keep)
    if e - s < 2:
        raise SegmentTooShort(f"only {e - s + 1} samples in the upper half around frame {peak}")
    return FlightSegment(s, e, peak)


def detect_flight_segments(
    traj,
    mode=ON_SPOT,
    half_window=10,
    floor_frames=100,
    fraction=0.15,
    min_rise_fraction=0.25,
):
    """Find every usable flight segment in ``traj``.

    Peaks that do not rise above their reference level (the floor for the
    on-spot rule, the higher of the two side minima for the lateral rule),
    or whose rise is below ``min_rise_fraction`` of the largest rise, are
    discarded as stance jitter. Segments never overlap: candidates are
    taken in order of decreasing rise and one that overlaps an accepted
    segment is dropped.

    Returns
    -------
    segments : list of FlightSegment
        Sorted by start frame.
    skipped : list of (peak, reason) pairs for candidates that were dropped
        by the segment rule itself or for overlapping.
    """
    if mode not in SEGMENT_MODES:
        raise ValueError(f"unknown segment mode {mode!r}")
    peaks = find_peaks(traj, half_window)
    floor_y = estimate_floor(traj, floor_frames) if mode == ON_SPOT else None
    # the lateral rule looks for minima only up to the neighbouring peaks
    bounds = {m: (a, b) for m, a, b in zip(peaks, [-1] + peaks[:-1], peaks[1:] + [len(traj)])}
    rises = {}
    for m in peaks:
        if mode == ON_SPOT:
            rise = traj.y[m] - floor_y
        else:
            rise = traj.y[m] - max(side_minima(traj, m, half_window, bounds[m]))
        if rise > 0:
            rises[m] = rise
    if not rises:
        return [], []
    top = max(rises.values())
    segments, skipped = [], []
    # higher flights first, so a lower peak inside a flight cannot claim it
    for m in sorted(rises, key=lambda k: (-rises[k], k)):
        if rises[m] < min_rise_fraction * top:
            continue
        try:
            if mode == ON_SPOT:
                seg = select_flight_segment(traj, m, floor_y, fraction)
            else:
                seg = select_flight_segment_lateral(traj, m, half_window, bounds[m])
        except SegmentTooShort as exc:
            skipped.append((m, str(exc)))
            continue
        clash = next((o for o in segments if seg.start <= o.end and o.start <= seg.end), None)
        if clash is not None:
            skipped.append((m, f"overlaps the flight peaking at frame {clash.peak}"))
            continue
        segments.append(seg)
    segments.sort(key=lambda seg: seg.start)
    skipped.sort()
    return segments, skipped
