"""On-disk formats: keypoint and ball JSONL, truth sidecars, CSV and reports.

Keypoint file (``.jsonl``), one JSON object per line::

    {"format": "gravheight-keypoints", "version": 1, "fps": 30.0,
     "image_height": 1080, "image_width": 1920, "joint_order": [...]}
    {"frame": 0, "persons": [[[x, y, score], ... 17 triples], ...]}
    {"frame": 1, "persons": []}

Pixel coordinates have rows growing downward. ``null`` coordinates read
as missing. Frames absent from the file are treated as frames without a
detection. When a frame lists several persons the one with the largest
keypoint bounding box is used.

Ball file (``.jsonl``)::

    {"format": "gravheight-ball", "version": 1, "fps": 120.0, "image_height": 1080}
    {"frame": 0, "center": [x, y], "diameter": 18.25}
"""

import csv
import json
import math
import os

import numpy as np

from .com import COCO_JOINTS, KeypointFrame, PoseSequence, Trajectory2D, select_primary_person
from .errors import NoDetections, ParseError

KEYPOINT_FORMAT = "gravheight-keypoints"
BALL_FORMAT = "gravheight-ball"
FORMAT_VERSION = 1


def _num(v):
    return float(v) if math.isfinite(v) else None


def _read_lines(path, expected_format):
    with open(path) as fh:
        lines = [(i, ln) for i, ln in enumerate(fh, 1) if ln.strip()]
    if not lines:
        raise ParseError(f"{path}: empty file")
    records = []
    for lineno, ln in lines:
        try:
            rec = json.loads(ln)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}:{lineno}: invalid JSON ({exc.msg})") from None
        if not isinstance(rec, dict):
            raise ParseError(f"{path}:{lineno}: expected a JSON object")
        records.append((lineno, rec))
    header = records[0][1]
    fmt = header.get("format")
    if fmt != expected_format:
        raise ParseError(f"{path}: header field 'format' must be {expected_format!r}, got {fmt!r}")
    if header.get("version") != FORMAT_VERSION:
        raise ParseError(f"{path}: unsupported version {header.get('version')!r}")
    return header, records[1:]


def _header_number(header, key, path, override=None, required=True):
    if override is not None:
        return float(override)
    if key not in header or header[key] is None:
        if required:
            raise ParseError(f"{path}: missing header field '{key}'")
        return None
    value = header[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not value > 0:
        raise ParseError(f"{path}: header field '{key}' must be a positive number, got {value!r}")
    return float(value)


def _frame_index(rec, lineno, path):
    k = rec.get("frame")
    if isinstance(k, bool) or not isinstance(k, int) or k < 0:
        raise ParseError(f"{path}:{lineno}: missing or invalid field 'frame'")
    return k


def _frames_in_order(records, path):
    out = {}
    for lineno, rec in records:
        k = _frame_index(rec, lineno, path)
        if k in out:
            raise ParseError(f"{path}:{lineno}: duplicate frame {k}")
        out[k] = (lineno, rec)
    return out


def _person(raw, lineno, path):
    arr = raw if isinstance(raw, list) else None
    if arr is None or len(arr) != len(COCO_JOINTS) or any(not isinstance(p, list) or len(p) != 3 for p in arr):
        raise ParseError(f"{path}:{lineno}: each person needs {len(COCO_JOINTS)} [x, y, score] triples")
    try:
        vals = np.array([[np.nan if v is None else float(v) for v in p] for p in arr])
    except (TypeError, ValueError):
        raise ParseError(f"{path}:{lineno}: non-numeric keypoint value") from None
    scores = vals[:, 2]
    if np.any(~np.isfinite(scores)) or np.any(scores < 0):
        raise ParseError(f"{path}:{lineno}: scores must be finite and non-negative")
    return KeypointFrame(vals[:, :2], scores)


def read_keypoints(path, fps=None):
    """Parse a keypoint file into a :class:`PoseSequence`.

    ``fps`` overrides the header value and makes the header field optional.

    Raises
    ------
    ParseError
        On an empty or malformed file or a missing ``fps``/``image_height``.
    """
    header, records = _read_lines(path, KEYPOINT_FORMAT)
    rate = _header_number(header, "fps", path, override=fps)
    image_height = _header_number(header, "image_height", path)
    order = header.get("joint_order", list(COCO_JOINTS))
    if list(order) != list(COCO_JOINTS):
        raise ParseError(f"{path}: joint_order must be the 17-joint COCO order")
    frames = _frames_in_order(records, path)
    if not frames:
        raise ParseError(f"{path}: no frame records")
    first, last = min(frames), max(frames)
    n_j = len(COCO_JOINTS)
    missing = KeypointFrame(np.full((n_j, 2), np.nan), np.zeros(n_j))
    seq = []
    for k in range(first, last + 1):
        if k not in frames:
            seq.append(missing)
            continue
        lineno, rec = frames[k]
        persons = rec.get("persons")
        if not isinstance(persons, list):
            raise ParseError(f"{path}:{lineno}: missing field 'persons'")
        try:
            seq.append(select_primary_person(_person(p, lineno, path) for p in persons))
        except NoDetections:
            seq.append(missing)
    return PoseSequence.from_frames(seq, rate, image_height, first)


def write_keypoints(path, seq, image_width=None):
    """Write ``seq`` as a single-person keypoint file; round-trips exactly."""
    if seq.image_height is None:
        raise ValueError("the keypoint format needs an image height")
    header = {
        "format": KEYPOINT_FORMAT,
        "version": FORMAT_VERSION,
        "fps": seq.fps,
        "image_height": seq.image_height,
    }
    if image_width is not None:
        header["image_width"] = image_width
    header["joint_order"] = list(COCO_JOINTS)
    with open(path, "w") as fh:
        fh.write(json.dumps(header) + "\n")
        for i in range(len(seq)):
            frame = seq.first_frame + i
            if not np.any(seq.scores[i] > 0) and not np.any(np.isfinite(seq.joints[i])):
                persons = []
            else:
                person = [
                    [_num(x), _num(y), float(s)]
                    for (x, y), s in zip(seq.joints[i].tolist(), seq.scores[i].tolist())
                ]
                persons = [person]
            fh.write(json.dumps({"frame": frame, "persons": persons}, allow_nan=False) + "\n")


def read_ball(path, fps=None):
    """Parse a ball file into ``(trajectory, diameters)``; missing frames are invalid."""
    header, records = _read_lines(path, BALL_FORMAT)
    rate = _header_number(header, "fps", path, override=fps)
    image_height = _header_number(header, "image_height", path)
    frames = _frames_in_order(records, path)
    if not frames:
        raise ParseError(f"{path}: no frame records")
    first, last = min(frames), max(frames)
    n = last - first + 1
    xy = np.full((n, 2), np.nan)
    diam = np.full(n, np.nan)
    for k, (lineno, rec) in frames.items():
        center, d = rec.get("center"), rec.get("diameter")
        if center is not None:
            if not isinstance(center, list) or len(center) != 2:
                raise ParseError(f"{path}:{lineno}: 'center' must be [x, y] or null")
            try:
                xy[k - first] = [float(center[0]), image_height - float(center[1])]
            except (TypeError, ValueError):
                raise ParseError(f"{path}:{lineno}: non-numeric centre") from None
        if d is not None:
            if isinstance(d, bool) or not isinstance(d, (int, float)):
                raise ParseError(f"{path}:{lineno}: 'diameter' must be a number or null")
            diam[k - first] = float(d)
    t = (first + np.arange(n)) / rate
    return Trajectory2D(t, xy, np.all(np.isfinite(xy), axis=1)), diam


def write_ball(path, ball):
    """Write a :class:`gravheight.sim.BallSequence` as a ball file."""
    header = {"format": BALL_FORMAT, "version": FORMAT_VERSION, "fps": ball.fps, "image_height": ball.image_height}
    with open(path, "w") as fh:
        fh.write(json.dumps(header) + "\n")
        for k, ((x, y), d) in enumerate(zip(ball.centers.tolist(), ball.diameters.tolist())):
            fh.write(json.dumps({"frame": k, "center": [x, y], "diameter": d}) + "\n")


def truth_dict(synth):
    """JSON-ready ground truth of a synthetic jumper."""
    truth = synth.truth
    out = {
        "q_true": truth.q_true,
        "h_true": truth.h_true,
        "contact": [bool(c) for c in truth.contact],
        "apex_times": [float(a) for a in truth.apex_times],
        "flight_intervals": [[float(a), float(b)] for a, b in truth.flight_intervals],
    }
    if synth.scene is not None:
        out["scene"] = synth.scene.to_dict()
    if synth.camera is not None:
        out["camera"] = synth.camera.to_dict()
    return out


def ball_truth_dict(ball):
    return {
        "q_true": ball.q_true,
        "size_true": ball.size_true,
        "contact": [bool(c) for c in ball.track.contact],
        "contact_times": [float(a) for a in ball.track.contact_times],
        "apex_times": [float(a) for a in ball.track.apex_times],
    }


def write_json(path, data):
    with open(path, "w") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg})") from None


def write_trajectory_csv(path, traj, inlier=None):
    """Plot-ready ``t, x, y, valid, inlier`` rows; invalid samples have empty x/y."""
    inlier = np.zeros(len(traj), dtype=bool) if inlier is None else np.asarray(inlier, dtype=bool)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t", "x", "y", "valid", "inlier"])
        for t, (x, y), v, i in zip(traj.t, traj.xy, traj.valid, inlier):
            w.writerow([repr(float(t)), "" if not v else repr(float(x)), "" if not v else repr(float(y)), int(v), int(i)])


def _fmt(v, digits=6):
    return "nan" if not math.isfinite(v) else f"{v:.{digits}f}"


def report_dict(estimate, config, source=None, population_mean=None):
    """JSON-ready report; floats are rounded so reruns are byte-identical."""
    out = {
        "source": os.path.basename(source) if source else None,
        "method": estimate.method,
        "segment_mode": config.segment_mode,
        "ransac": config.ransac,
        "seed": config.seed,
        "h_px": round(estimate.h_px, 9),
        "correction_c": estimate.correction_c,
        "rotation_angle": round(estimate.rotation_angle, 12),
        "segments": [
            {
                "id": s.segment_id,
                "start": s.start,
                "end": s.end,
                "peak": s.peak,
                "a_px": round(s.a_px, 9),
                "q": round(s.q, 12),
                "h": round(s.h, 9),
                "n_samples": s.n_samples,
                "n_inliers": s.n_inliers,
            }
            for s in estimate.per_segment
        ],
        "aggregate": round(estimate.aggregate_h, 9),
        "aggregate_q": round(estimate.aggregate_q, 12),
        "systematic_sd": round(estimate.systematic_sd, 9),
        "warnings": list(estimate.warnings),
    }
    if population_mean is not None:
        out["population_mean"] = population_mean
    return out


def format_report(estimate, config, source=None, population_mean=None, unit="height"):
    """Human-readable report with a per-segment table."""
    lines = []
    if source:
        lines.append(f"input: {os.path.basename(source)}")
    ransac = f"on ({config.ransac_iterations} iterations, tol {config.ransac_tol:g} px, seed {config.seed})"
    lines.append(f"method: {estimate.method}   segments: {config.segment_mode}   ransac: {ransac if config.ransac else 'off'}")
    if estimate.rotation_angle:
        lines.append(f"rotation: {np.degrees(estimate.rotation_angle):.3f} deg")
    if estimate.correction_c != 1.0:
        lines.append(f"pixel span: {_fmt(estimate.h_px, 4)} px (nose-ankle, c = {estimate.correction_c:g})")
    else:
        lines.append(f"pixel size: {_fmt(estimate.h_px, 4)} px")
    lines.append("")
    lines.append(f"{'seg':>3} {'start':>6} {'end':>6} {'peak':>6} {'a_px[px/s2]':>14} {'q[m/px]':>12} {unit + '[m]':>11} {'inliers':>9}")
    for s in estimate.per_segment:
        lines.append(
            f"{s.segment_id:>3} {s.start:>6} {s.end:>6} {s.peak:>6} {_fmt(s.a_px, 4):>14} "
            f"{_fmt(s.q, 8):>12} {_fmt(s.h, 6):>11} {f'{s.n_inliers}/{s.n_samples}':>9}"
        )
    lines.append("")
    n = estimate.n_segments
    lines.append(f"{unit}: {_fmt(estimate.aggregate_h)} m (median of {n} segment{'s' if n != 1 else ''})")
    if estimate.correction_c != 1.0:
        lines.append(f"systematic SD from c: {_fmt(estimate.systematic_sd, 4)} m")
    if population_mean is not None:
        lines.append(f"population mean baseline: {population_mean:.3f} m")
    if estimate.warnings:
        lines.append("warnings:")
        lines.extend(f"  - {w}" for w in estimate.warnings)
    return "\n".join(lines) + "\n"
