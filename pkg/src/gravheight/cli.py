"""Command-line interface.

Verbs: ``estimate`` (person height from a keypoint file), ``ball`` (rigid
object size from a ball file), ``simulate`` (synthetic fixtures with truth
sidecars) and ``table`` (perspective error matrix).

Errors print ``error: <Name>: <message>`` on stderr and exit with the
class's code (see :mod:`gravheight.errors`). Invalid arguments exit 2,
unreadable or unwritable files 15.
"""

import argparse
import dataclasses
import json
import sys

import numpy as np

from . import formats
from .config import METHODS, STANDING_WINDOWS, RunConfig
from .errors import GravHeightError, ParseError
from .estimate import POPULATION_MEAN_HEIGHT, estimate_height, estimate_rigid_size
from .events import LATERAL, SEGMENT_MODES
from .sim import (
    CAMERA_KINDS,
    BallScene,
    CameraModel,
    JumperScene,
    appendix_error_table,
    corrupt,
    generate_ball,
    generate_jumper,
)

ARGUMENT_ERROR = 2
IO_ERROR = 15


def _add_config_flags(p):
    g = p.add_argument_group("run configuration (flags override --config)")
    g.add_argument("--config", help="JSON file with RunConfig fields")
    g.add_argument("--fps", type=float, help="override the file's frame rate")
    g.add_argument("--method", choices=METHODS)
    g.add_argument("--segment-mode", choices=SEGMENT_MODES)
    g.add_argument("--ransac", action=argparse.BooleanOptionalAction, default=None)
    g.add_argument("--ransac-iterations", type=int)
    g.add_argument("--ransac-tol", type=float, help="inlier tolerance in pixels")
    g.add_argument("--conf-threshold", type=float)
    g.add_argument("--fraction", type=float, help="on-spot cut as a fraction of the rise")
    g.add_argument("--c", type=float, help="nose-ankle correction factor")
    g.add_argument("--g", type=float, help="gravitational acceleration in m/s^2")
    g.add_argument("--mass-table", help="text file of 'index weight' lines")
    g.add_argument("--seed", type=int)
    g.add_argument("--half-window", type=int)
    g.add_argument("--floor-frames", type=int)
    g.add_argument("--standing-frames", type=int)
    g.add_argument("--standing-window", choices=STANDING_WINDOWS)
    g.add_argument("--rotate", action=argparse.BooleanOptionalAction, default=None)
    g.add_argument("--min-rise-fraction", type=float)
    g.add_argument("--on-segment-error", choices=("skip", "raise"))


_CONFIG_FIELDS = [f.name for f in dataclasses.fields(RunConfig)]


def build_config(args, base=None):
    """Defaults (``base``), then the config file, then explicitly given flags."""
    base = base or RunConfig()
    config = RunConfig.from_file(args.config, base) if args.config else base
    return config.updated(**{k: getattr(args, k, None) for k in _CONFIG_FIELDS})


def _add_output_flags(p):
    p.add_argument("-o", "--output", help="text report path (default: stdout)")
    p.add_argument("--json", dest="json_out", help="also write a JSON report here")
    p.add_argument("--trajectory-csv", help="write t,x,y,valid,inlier rows here")


def _emit(text, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _write_outputs(args, est, config, unit):
    baseline = POPULATION_MEAN_HEIGHT if unit == "height" else None
    _emit(formats.format_report(est, config, args.input, baseline, unit), args.output)
    if args.json_out:
        formats.write_json(args.json_out, formats.report_dict(est, config, args.input, baseline))
    if args.trajectory_csv:
        formats.write_trajectory_csv(args.trajectory_csv, est.trajectory, est.inliers)


def cmd_estimate(args):
    config = build_config(args)
    seq = formats.read_keypoints(args.input, fps=config.fps)
    est = estimate_height(seq, config=config)
    _write_outputs(args, est, config, "height")
    return 0


def cmd_ball(args):
    # bounce arcs have no standing floor, so cut halfway to each bounce by default
    config = build_config(args, RunConfig(segment_mode=LATERAL))
    traj, diam = formats.read_ball(args.input, fps=config.fps)
    if args.size_px is not None:
        size_px = args.size_px
    else:
        finite = diam[np.isfinite(diam)]
        if finite.size == 0:
            raise ParseError(f"{args.input}: no diameter values and no --size-px given")
        size_px = float(np.median(finite))
    est = estimate_rigid_size(traj, size_px, config)
    _write_outputs(args, est, config, "size")
    return 0


def _camera(args, distance):
    if args.camera == "perspective":
        return CameraModel.perspective(args.f, roll=np.radians(args.roll))
    if args.camera == "scaled_orthographic":
        return CameraModel.scaled_orthographic(args.f, distance, roll=np.radians(args.roll))
    return CameraModel.affine(json.loads(args.affine_matrix), roll=np.radians(args.roll))


def cmd_simulate(args):
    if args.kind == "ball":
        scene = BallScene(
            diameter=args.diameter,
            drop_height=args.drop_height,
            restitution=args.restitution,
            distance=args.distance,
            fps=args.fps,
            duration=args.duration,
        )
        ball = generate_ball(scene, _camera(args, args.distance))
        if args.noise:
            rng = np.random.default_rng(args.seed)
            noisy = ball.centers + rng.normal(0.0, args.noise, ball.centers.shape)
            ball = dataclasses.replace(ball, centers=noisy)
        formats.write_ball(args.output, ball)
        if args.truth:
            formats.write_json(args.truth, formats.ball_truth_dict(ball))
        return 0
    scene = JumperScene(
        person_height=args.person_height,
        jump_height=args.jump_height,
        jump_length=args.jump_length,
        approach_angle=args.approach_angle,
        distance=args.distance,
        fps=args.fps,
        duration=args.duration,
        n_jumps=args.n_jumps,
        countermovement=args.countermovement,
    )
    synth = generate_jumper(scene, _camera(args, args.distance))
    synth = corrupt(synth, args.noise, args.outlier_rate, args.outlier_magnitude, args.seed)
    formats.write_keypoints(args.output, synth.pose, image_width=synth.image_size[0])
    if args.truth:
        formats.write_json(args.truth, formats.truth_dict(synth))
    return 0


def cmd_table(args):
    kind = "affine" if args.affine else args.camera
    table = appendix_error_table(camera_kind=kind, f=args.f, fps=args.fps, phases=args.phases)
    _emit(table.to_csv(), args.output)
    for name, ok, detail in table.checks():
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}", file=sys.stderr if not args.output else sys.stdout)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gravheight", description="Metric height from video, with gravity as the ruler."
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("estimate", help="estimate a person's height from a keypoint file")
    p.add_argument("input", help="keypoint JSONL file")
    _add_config_flags(p)
    _add_output_flags(p)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("ball", help="estimate an object's size from a ball file")
    p.add_argument("input", help="ball JSONL file")
    p.add_argument("--size-px", type=float, help="object size in pixels (default: median diameter in file)")
    _add_config_flags(p)
    _add_output_flags(p)
    p.set_defaults(func=cmd_ball)

    p = sub.add_parser("simulate", help="write a synthetic keypoint or ball file")
    p.add_argument("kind", choices=("jumper", "ball"))
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--truth", help="truth sidecar JSON path")
    p.add_argument("--camera", choices=CAMERA_KINDS, default="scaled_orthographic")
    p.add_argument("--affine-matrix", default="[[250, 0, 10], [5, 250, 20]]", help="2x3 JSON matrix")
    p.add_argument("--f", type=float, default=1000.0)
    p.add_argument("--roll", type=float, default=0.0, help="camera roll in degrees")
    p.add_argument("--distance", type=float, default=4.0)
    p.add_argument("--fps", type=float, default=None)
    p.add_argument("--duration", type=float, default=None)
    p.add_argument("--person-height", type=float, default=1.8)
    p.add_argument("--jump-height", type=float, default=0.15)
    p.add_argument("--jump-length", type=float, default=0.0)
    p.add_argument("--approach-angle", type=float, default=0.0)
    p.add_argument("--n-jumps", type=int, default=1)
    p.add_argument("--countermovement", type=float, default=0.0)
    p.add_argument("--diameter", type=float, default=0.073)
    p.add_argument("--drop-height", type=float, default=1.0)
    p.add_argument("--restitution", type=float, default=0.707)
    p.add_argument("--noise", type=float, default=0.0, help="pixel noise SD")
    p.add_argument("--outlier-rate", type=float, default=0.0)
    p.add_argument("--outlier-magnitude", type=float, default=50.0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("table", help="height error vs. approach angle and distance")
    p.add_argument("--camera", choices=CAMERA_KINDS, default="perspective")
    p.add_argument("--affine", action="store_true", help="shorthand for --camera affine")
    p.add_argument("--f", type=float, default=1000.0)
    p.add_argument("--fps", type=float, default=30.0)
    p.add_argument("--phases", type=int, default=8, help="take-off phases averaged per cell")
    p.add_argument("-o", "--output", help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_table)
    return parser


def _fill_sim_defaults(args):
    if getattr(args, "verb", None) != "simulate":
        return
    if args.fps is None:
        args.fps = 120.0 if args.kind == "ball" else 30.0
    if args.duration is None:
        args.duration = 1.5 if args.kind == "ball" else 8.0


def main(argv=None):
    args = build_parser().parse_args(argv)
    _fill_sim_defaults(args)
    try:
        return args.func(args)
    except GravHeightError as exc:
        print(f"error: {exc.name}: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, json.JSONDecodeError) as exc:
        print(f"error: InvalidArgument: {exc}", file=sys.stderr)
        return ARGUMENT_ERROR
    except OSError as exc:
        print(f"error: IOError: {exc}", file=sys.stderr)
        return IO_ERROR


if __name__ == "__main__":
    sys.exit(main())
