"""Synthetic scenes with exact ground truth.

Everything here is expressed in camera coordinates: X right, Y up, Z along
the optical axis. The ground plane sits at ``Y = -camera_height``. Image
points come out of :func:`project` up-positive and relative to the
principal point; :func:`to_pixels` converts them to row-down pixel
coordinates for files.
"""

from dataclasses import dataclass, field

import numpy as np

from .com import COCO_JOINTS, MassTable, PoseSequence, Trajectory2D
from .config import RunConfig
from .errors import BehindCamera
from .estimate import estimate_height
from .physics import G_DEFAULT, NOSE_ANKLE_FACTOR, FreeFallParams

PERSPECTIVE = "perspective"
SCALED_ORTHOGRAPHIC = "scaled_orthographic"
AFFINE = "affine"
CAMERA_KINDS = (PERSPECTIVE, SCALED_ORTHOGRAPHIC, AFFINE)

DEFAULT_RESTITUTION = 0.707
SIM_SCORE = 10.0
IMAGE_SIZE = (1920, 1080)


@dataclass(frozen=True)
class CameraModel:
    """Pinhole, scaled-orthographic or general affine camera.

    ``roll``, ``pitch`` and ``yaw`` (radians) rotate scene points into the
    camera frame before projecting.
    """

    kind: str = PERSPECTIVE
    f: float = 1000.0
    d: float = None
    affine_matrix: np.ndarray = None
    roll: float = 0.0
    pitch: float = 0.0
    yaw: float = 0.0

    def __post_init__(self):
        if self.kind not in CAMERA_KINDS:
            raise ValueError(f"unknown camera kind {self.kind!r}")
        if self.kind in (PERSPECTIVE, SCALED_ORTHOGRAPHIC) and not self.f > 0:
            raise ValueError("focal length must be positive")
        if self.kind == SCALED_ORTHOGRAPHIC and not (self.d is not None and self.d > 0):
            raise ValueError("scaled-orthographic camera needs a positive reference distance d")
        if self.kind == AFFINE:
            if self.affine_matrix is None:
                raise ValueError("affine camera needs an affine_matrix")
            mat = np.asarray(self.affine_matrix, dtype=float)
            if mat.shape != (2, 3):
                raise ValueError(f"affine_matrix must be 2x3, got {mat.shape}")
            object.__setattr__(self, "affine_matrix", mat)

    @classmethod
    def perspective(cls, f=1000.0, **rot):
        return cls(PERSPECTIVE, f=f, **rot)

    @classmethod
    def scaled_orthographic(cls, f=1000.0, d=4.0, **rot):
        return cls(SCALED_ORTHOGRAPHIC, f=f, d=d, **rot)

    @classmethod
    def affine(cls, matrix, **rot):
        return cls(AFFINE, affine_matrix=matrix, **rot)

    def rotation(self):
        cr, sr = np.cos(self.roll), np.sin(self.roll)
        cp, sp = np.cos(self.pitch), np.sin(self.pitch)
        cy, sy = np.cos(self.yaw), np.sin(self.yaw)
        rz = np.array([[cr, -sr, 0], [sr, cr, 0], [0, 0, 1]])
        rx = np.array([[1, 0, 0], [0, cp, -sp], [0, sp, cp]])
        ry = np.array([[cy, 0, sy], [0, 1, 0], [-sy, 0, cy]])
        return rz @ rx @ ry

    def linear_map(self, depth=None):
        """2x3 map from scene vectors to image vectors.

        Exact for the affine and scaled-orthographic models; for the pinhole
        model it is the scaled-orthographic approximation at ``depth``.
        """
        if self.kind == AFFINE:
            base = self.affine_matrix
        else:
            ref = self.d if self.kind == SCALED_ORTHOGRAPHIC else depth
            if ref is None:
                raise ValueError("a reference depth is needed to linearise a perspective camera")
            base = (self.f / ref) * np.eye(3)[:2]
        return base @ self.rotation()

    def to_dict(self):
        out = {"kind": self.kind, "f": self.f, "d": self.d, "roll": self.roll, "pitch": self.pitch, "yaw": self.yaw}
        if self.affine_matrix is not None:
            out["affine_matrix"] = self.affine_matrix.tolist()
        return out


def project(camera, points3d):
    """Project ``(..., 3)`` scene points to ``(..., 2)`` up-positive image points."""
    pts = np.asarray(points3d, dtype=float) @ camera.rotation().T
    if camera.kind == PERSPECTIVE:
        z = pts[..., 2]
        if np.any(z <= 0):
            raise BehindCamera("point at or behind the camera plane")
        return camera.f * pts[..., :2] / z[..., None]
    if camera.kind == SCALED_ORTHOGRAPHIC:
        return (camera.f / camera.d) * pts[..., :2]
    return pts @ camera.affine_matrix.T


def to_pixels(points2d, image_size=IMAGE_SIZE):
    """Up-positive image points to pixel coordinates with rows growing downward."""
    pts = np.asarray(points2d, dtype=float)
    w, h = image_size
    return np.stack([w / 2.0 + pts[..., 0], h / 2.0 - pts[..., 1]], axis=-1)


# -- rigid projectile ---------------------------------------------------------


@dataclass(frozen=True)
class ProjectileTrack:
    t: np.ndarray
    positions: np.ndarray
    contact: np.ndarray
    contact_times: tuple
    apex_times: tuple


def generate_projectile(params, fps, duration, ground_y=0.0, restitution=DEFAULT_RESTITUTION):
    """Sample a bouncing ballistic body at ``t = k / fps``.

    ``ground_y`` is the height (along ``-g_vec``) at which the body touches
    the ground. Each impact keeps ``restitution`` of the vertical speed, so
    successive apex heights shrink by ``restitution**2``; once the rebound
    is negligible, or with ``restitution == 0``, the body comes to rest.
    """
    if not (fps > 0 and duration > 0):
        raise ValueError("fps and duration must be positive")
    if not 0 <= restitution <= 1:
        raise ValueError("restitution must lie in [0, 1]")
    g_vec = params.g_vec
    g = params.g
    up = -g_vec / g

    pieces = []  # (t_begin, p, v, resting)
    contact_times, apex_times = [], []
    t0, p, v = 0.0, params.p0.copy(), params.v0.copy()
    resting = False
    while t0 <= duration:
        h = p @ up - ground_y
        w = v @ up
        if resting:
            pieces.append((t0, p, np.zeros(3), True))
            break
        pieces.append((t0, p, v, False))
        if w >= 0:
            apex_times.append(t0 + w / g)
        tau = (w + np.sqrt(w * w + 2.0 * g * max(h, 0.0))) / g
        if tau <= 1e-12 and w <= 0:
            tau = 0.0
        t_hit = t0 + tau
        p_hit = p + v * tau + 0.5 * g_vec * tau**2
        v_hit = v + g_vec * tau
        if t_hit <= duration:
            contact_times.append(t_hit)
        w_hit = v_hit @ up
        rebound = -restitution * w_hit
        p = p_hit - (p_hit @ up - ground_y) * up
        if rebound * rebound / (2 * g) < 1e-12:
            resting = True
            v = np.zeros(3)
        else:
            v = v_hit + (rebound - w_hit) * up
        t0 = t_hit

    n = int(round(duration * fps))
    t = np.arange(n) / fps
    starts = np.array([pc[0] for pc in pieces])
    which = np.searchsorted(starts, t, side="right") - 1
    positions = np.empty((n, 3))
    contact = np.zeros(n, dtype=bool)
    for k, i in enumerate(which):
        tb, pb, vb, rest = pieces[i]
        if rest:
            positions[k] = pb
            contact[k] = True
            continue
        dt = t[k] - tb
        positions[k] = pb + vb * dt + 0.5 * g_vec * dt**2
        contact[k] = positions[k] @ up - ground_y <= 1e-12
    apex_times = tuple(a for a in apex_times if a <= duration)
    return ProjectileTrack(t, positions, contact, tuple(contact_times), apex_times)


@dataclass(frozen=True)
class BallScene:
    diameter: float = 0.073
    drop_height: float = 1.0
    up_speed: float = 0.0
    lateral_speed: float = 0.0
    restitution: float = DEFAULT_RESTITUTION
    distance: float = 4.0
    camera_height: float = 0.0
    fps: float = 120.0
    duration: float = 1.5
    g: float = G_DEFAULT


@dataclass(frozen=True)
class BallSequence:
    """Ball centre (row-down pixels), per-frame diameter in pixels and truth."""

    centers: np.ndarray
    diameters: np.ndarray
    fps: float
    image_height: float
    track: ProjectileTrack
    q_true: float
    size_true: float

    def trajectory(self):
        y = self.image_height - self.centers[:, 1]
        return Trajectory2D.from_points(np.arange(len(self.centers)) / self.fps, self.centers[:, 0], y)


def generate_ball(scene, camera=None, image_size=IMAGE_SIZE):
    """Ball dropped (or tossed up) in front of the camera, bouncing on the floor."""
    camera = camera or CameraModel.scaled_orthographic(d=scene.distance)
    radius = scene.diameter / 2.0
    floor = -scene.camera_height
    params_p0 = np.array([0.0, floor + radius + scene.drop_height, scene.distance])

    params = FreeFallParams(
        p0=params_p0,
        v0=np.array([scene.lateral_speed, scene.up_speed, 0.0]),
        g_vec=np.array([0.0, -scene.g, 0.0]),
    )
    track = generate_projectile(params, scene.fps, scene.duration, ground_y=floor + radius, restitution=scene.restitution)
    center = project(camera, track.positions)
    top = project(camera, track.positions + np.array([0.0, radius, 0.0]))
    bottom = project(camera, track.positions - np.array([0.0, radius, 0.0]))
    diam = np.linalg.norm(top - bottom, axis=1)
    a_vert = -(camera.linear_map(scene.distance) @ params.g_vec)[1]
    return BallSequence(
        centers=to_pixels(center, image_size),
        diameters=diam,
        fps=scene.fps,
        image_height=float(image_size[1]),
        track=track,
        q_true=scene.g / a_vert,
        size_true=scene.diameter,
    )


# -- articulated jumper -------------------------------------------------------

# Standing skeleton: (lateral offset, height above floor) as fractions of body
# height. Nose-to-ankle is exactly 1/1.17 of the height so the nose-ankle
# correction adds no model error.
_ANKLE_H = 0.04
_SKELETON = np.array(
    [
        (0.0, _ANKLE_H + 1.0 / NOSE_ANKLE_FACTOR),
        (0.02, 0.91),
        (-0.02, 0.91),
        (0.045, 0.905),
        (-0.045, 0.905),
        (0.13, 0.82),
        (-0.13, 0.82),
        (0.15, 0.63),
        (-0.15, 0.63),
        (0.15, 0.48),
        (-0.15, 0.48),
        (0.055, 0.53),
        (-0.055, 0.53),
        (0.055, 0.29),
        (-0.055, 0.29),
        (0.055, _ANKLE_H),
        (-0.055, _ANKLE_H),
    ]
)
assert _SKELETON.shape[0] == len(COCO_JOINTS)

CROUCH_TIME = 0.4


@dataclass(frozen=True)
class JumperScene:
    """A subject standing, jumping ``n_jumps`` times and standing again.

    ``jump_height`` is the rise of the COM from take-off to apex and
    ``jump_length`` the horizontal flight distance, travelled at
    ``approach_angle`` degrees toward the camera (0 = parallel to the image
    plane). ``distance`` is the depth of the midpoint of the whole path.
    ``countermovement`` (m) adds a crouch before take-off and after landing;
    ``takeoff_rise`` (m) lifts the COM above its standing height while the
    feet still push off. Both phases are ground contact. The jumps are
    centred in the clip and then shifted by ``time_offset`` seconds.
    """

    person_height: float = 1.8
    jump_height: float = 0.15
    jump_length: float = 1.0
    approach_angle: float = 0.0
    distance: float = 4.0
    fps: float = 30.0
    duration: float = 8.0
    n_jumps: int = 1
    jump_interval: float = 1.5
    countermovement: float = 0.0
    takeoff_rise: float = 0.0
    camera_height: float = 0.0
    lateral_offset: float = 0.0
    time_offset: float = 0.0
    g: float = G_DEFAULT

    def __post_init__(self):
        for name in ("person_height", "fps", "duration", "distance", "g"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        for name in ("jump_height", "jump_length", "countermovement", "takeoff_rise", "jump_interval"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.n_jumps < 1:
            raise ValueError("n_jumps must be at least 1")

    @property
    def takeoff_speed(self):
        return np.sqrt(2.0 * self.g * self.jump_height)

    @property
    def flight_time(self):
        return 2.0 * self.takeoff_speed / self.g

    @property
    def active_time(self):
        """Seconds from the first crouch to the end of the last recovery."""
        if self.jump_height == 0:
            return 0.0
        lift = self.countermovement + self.takeoff_rise
        tc = CROUCH_TIME if self.countermovement > 0 else 0.0
        tp = 2.0 * lift / self.takeoff_speed if lift > 0 else 0.0
        block = 2 * tc + 2 * tp + self.flight_time
        return self.n_jumps * block + (self.n_jumps - 1) * self.jump_interval

    def to_dict(self):
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


@dataclass(frozen=True)
class SceneTruth:
    q_true: float
    h_true: float
    contact: np.ndarray
    apex_times: tuple
    flight_intervals: tuple
    com3d: np.ndarray = None
    outliers: np.ndarray = None


@dataclass(frozen=True)
class SyntheticSequence:
    pose: PoseSequence
    points3d: np.ndarray
    truth: SceneTruth
    scene: JumperScene = None
    camera: CameraModel = None
    image_size: tuple = IMAGE_SIZE
    extra: dict = field(default_factory=dict)


def _root_motion(scene, t):
    """Vertical COM offset ``u(t)`` and horizontal progress ``s(t)`` (metres)."""
    u = np.zeros_like(t)
    s = np.zeros_like(t)
    flights = []
    vy = scene.takeoff_speed
    if scene.jump_height == 0:
        return u, s, flights
    g = scene.g
    cm, rise = scene.countermovement, scene.takeoff_rise
    tc = CROUCH_TIME if cm > 0 else 0.0
    lift = cm + rise
    accel = vy * vy / (2.0 * lift) if lift > 0 else np.inf
    tp = 2.0 * lift / vy if lift > 0 else 0.0
    tf = scene.flight_time
    block = 2 * tc + 2 * tp + tf
    total = scene.active_time
    if total > scene.duration:
        raise ValueError(f"{scene.n_jumps} jump(s) need {total:.3f} s but the clip lasts {scene.duration} s")
    t_begin = 0.5 * (scene.duration - total) + scene.time_offset
    if t_begin < 0 or t_begin + total > scene.duration:
        raise ValueError("time_offset pushes the jumps outside the clip")
    for k in range(scene.n_jumps):
        b = t_begin + k * (block + scene.jump_interval)
        t_crouch, t_push, t_off = b, b + tc, b + tc + tp
        t_land, t_absorb, t_rec, t_end = t_off + tf, t_off + tf + tp, t_off + tf + tp + tc, b + block
        if tc:
            m = (t >= t_crouch) & (t < t_push)
            u[m] = -cm * 0.5 * (1 - np.cos(np.pi * (t[m] - t_crouch) / tc))
        if tp:
            m = (t >= t_push) & (t < t_off)
            u[m] = -cm + 0.5 * accel * (t[m] - t_push) ** 2
        m = (t >= t_off) & (t <= t_land)
        tau = t[m] - t_off
        u[m] = rise + vy * tau - 0.5 * g * tau**2
        s[m] += scene.jump_length * tau / tf
        s[t > t_land] += scene.jump_length
        if tp:
            m = (t > t_land) & (t < t_absorb)
            tau = t[m] - t_land
            u[m] = rise - vy * tau + 0.5 * accel * tau**2
        if tc:
            m = (t >= t_absorb) & (t < t_rec)
            u[m] = -cm * 0.5 * (1 + np.cos(np.pi * (t[m] - t_absorb) / tc))
        del t_end
        flights.append((t_off, t_land))
    return u, s, flights


def generate_jumper(scene, camera=None, masses=None, image_size=IMAGE_SIZE):
    """Render a static-pose skeleton riding the scene's COM path through ``camera``.

    The pose relative to the root never changes, so the COM follows the root
    exactly and the flight phases are exact parabolas in 3D. Joint scores are
    a constant ``SIM_SCORE``.
    """
    camera = camera or CameraModel.perspective()
    masses = masses or MassTable.default()
    n = int(round(scene.duration * scene.fps))
    t = np.arange(n) / scene.fps
    u, s, flights = _root_motion(scene, t)

    alpha = np.radians(scene.approach_angle)
    direction = np.array([np.cos(alpha), 0.0, -np.sin(alpha)])
    path = scene.n_jumps * scene.jump_length
    start = np.array([scene.lateral_offset, -scene.camera_height, scene.distance]) - 0.5 * path * direction
    root = start + s[:, None] * direction
    root[:, 1] += u

    offsets = np.column_stack([_SKELETON[:, 0], _SKELETON[:, 1], np.zeros(len(_SKELETON))]) * scene.person_height
    points3d = root[:, None, :] + offsets[None, :, :]

    image = project(camera, points3d)
    pixels = to_pixels(image, image_size)
    pose = PoseSequence(pixels, np.full(pixels.shape[:2], SIM_SCORE), scene.fps, float(image_size[1]))

    contact = np.ones(n, dtype=bool)
    for t_off, t_land in flights:
        contact &= ~((t > t_off) & (t < t_land))
    vy = scene.takeoff_speed
    apex = tuple(t_off + vy / scene.g for t_off, _ in flights)

    g_vec = np.array([0.0, -scene.g, 0.0])
    a_vert = -(camera.linear_map(scene.distance) @ g_vec)[1]
    truth = SceneTruth(
        q_true=scene.g / a_vert,
        h_true=scene.person_height,
        contact=contact,
        apex_times=apex,
        flight_intervals=tuple(flights),
        com3d=masses.weights @ points3d,
    )
    return SyntheticSequence(pose, points3d, truth, scene, camera, image_size)


def corrupt(seq, noise_sigma=0.0, outlier_rate=0.0, outlier_magnitude=50.0, seed=0, outlier_score=None):
    """Add Gaussian pixel noise and displaced outlier joints.

    Each joint independently becomes an outlier with probability
    ``outlier_rate`` and is moved by exactly ``outlier_magnitude`` pixels in
    a random direction (before noise). ``outlier_score`` replaces the score
    of outlier joints when given. With zero noise and zero rate the input is
    returned unchanged.
    """
    if not (0 <= outlier_rate <= 1) or noise_sigma < 0:
        raise ValueError("outlier_rate must lie in [0, 1] and noise_sigma be non-negative")
    if noise_sigma == 0 and outlier_rate == 0:
        return seq
    rng = np.random.default_rng(seed)
    joints = seq.pose.joints.copy()
    scores = seq.pose.scores.copy()
    shape = joints.shape[:2]
    mask = rng.random(shape) < outlier_rate
    phi = rng.uniform(0.0, 2.0 * np.pi, size=shape)
    if outlier_rate > 0:
        disp = outlier_magnitude * np.stack([np.cos(phi), np.sin(phi)], axis=-1)
        joints[mask] += disp[mask]
        if outlier_score is not None:
            scores[mask] = outlier_score
    if noise_sigma > 0:
        joints += rng.normal(0.0, noise_sigma, size=joints.shape)
    pose = PoseSequence(joints, scores, seq.pose.fps, seq.pose.image_height, seq.pose.first_frame)
    truth = SceneTruth(**{**seq.truth.__dict__, "outliers": mask})
    return SyntheticSequence(pose, seq.points3d, truth, seq.scene, seq.camera, seq.image_size, dict(seq.extra))


def corrupt_trajectory(traj, noise_sigma=0.0, outlier_rate=0.0, outlier_magnitude=50.0, seed=0, eligible=None):
    """Noise plus vertical outliers on a trajectory; returns ``(traj, outlier_mask)``.

    Exactly ``round(outlier_rate * n)`` of the ``n`` valid samples (restricted
    to the indices in ``eligible`` when given) are displaced by
    ``±outlier_magnitude`` with a random sign.
    """
    rng = np.random.default_rng(seed)
    xy = traj.xy.copy()
    pool = np.flatnonzero(traj.valid)
    if eligible is not None:
        pool = np.intersect1d(pool, np.asarray(eligible))
    n_out = int(round(outlier_rate * pool.size))
    chosen = rng.choice(pool, size=n_out, replace=False)
    mask = np.zeros(len(traj), dtype=bool)
    mask[chosen] = True
    if noise_sigma > 0:
        xy += rng.normal(0.0, noise_sigma, size=xy.shape)
    xy[chosen, 1] += outlier_magnitude * rng.choice([-1.0, 1.0], size=n_out)
    return Trajectory2D(traj.t, xy, traj.valid), mask


# -- perspective error table --------------------------------------------------

TABLE_DISTANCES = (4.0, 7.0, 15.0, 30.0)
TABLE_ANGLES = (0.0, 10.0, 45.0, 90.0)
TABLE_SCENE = JumperScene(person_height=1.8, jump_height=0.15, jump_length=1.0, fps=30.0, duration=8.0)
TABLE_CONFIG = RunConfig(segment_mode="lateral", standing_window="start_end")


def table_camera(kind, distance, f=1000.0):
    """Camera used for one table cell; the affine variant is deliberately generic."""
    if kind == PERSPECTIVE:
        return CameraModel.perspective(f)
    if kind == SCALED_ORTHOGRAPHIC:
        return CameraModel.scaled_orthographic(f, distance)
    if kind == AFFINE:
        k = f / distance
        return CameraModel.affine(k * np.array([[1.0, 0.0, 0.05], [0.03, 1.0, 0.08]]))
    raise ValueError(f"unknown camera kind {kind!r}")


@dataclass(frozen=True)
class ErrorTable:
    """Absolute height error in cm; rows are angles, columns distances."""

    ae_cm: np.ndarray
    distances: tuple
    angles: tuple
    camera: str

    def cell(self, angle, distance):
        return float(self.ae_cm[self.angles.index(angle), self.distances.index(distance)])

    def checks(self):
        """Named pass/fail checks of the table's qualitative claims."""
        out = []
        negligible = [
            self.ae_cm[i, j]
            for i, a in enumerate(self.angles)
            for j, d in enumerate(self.distances)
            if a <= 10 or d >= 15
        ]
        out.append(("negligible_cells_below_1cm", bool(max(negligible) < 1.0), f"max {max(negligible):.4f} cm"))
        if 0.0 in self.angles:
            row = self.ae_cm[self.angles.index(0.0)]
            ok = bool(np.all(np.diff(row) <= 1e-9))
            out.append(("fronto_parallel_non_increasing", ok, " ".join(f"{v:.4f}" for v in row)))
        steep = [i for i, a in enumerate(self.angles) if a > 10]
        if steep:
            ok = all(np.all(np.diff(self.ae_cm[i]) <= 1e-9) for i in steep)
            out.append(("steep_rows_non_increasing", bool(ok), f"{len(steep)} row(s)"))
        if self.camera == PERSPECTIVE and 90.0 in self.angles and 4.0 in self.distances:
            v = self.cell(90.0, 4.0)
            out.append(("toward_camera_4m_within_50pct_of_21cm", bool(10.5 <= v <= 31.5), f"{v:.2f} cm"))
        if self.camera == AFFINE:
            m = float(self.ae_cm.max())
            out.append(("affine_all_below_1e-4cm", bool(m < 1e-4), f"max {m:.2e} cm"))
        return out

    def to_csv(self):
        lines = ["angle_deg," + ",".join(f"d={d:g}m" for d in self.distances)]
        for a, row in zip(self.angles, self.ae_cm):
            lines.append(f"{a:g}," + ",".join(f"{v:.6f}" for v in row))
        return "\n".join(lines) + "\n"


def appendix_error_table(
    distances=TABLE_DISTANCES,
    angles=TABLE_ANGLES,
    camera_kind=PERSPECTIVE,
    f=1000.0,
    fps=30.0,
    scene=TABLE_SCENE,
    config=TABLE_CONFIG,
    phases=8,
):
    """Noise-free height error of the full pipeline per (approach angle, distance).

    The scene camera sits at floor level looking horizontally; the subject
    stands, makes one 1 m / 15 cm jump centred at the given distance and
    stands again. Flights are found with the lateral (max-min) rule and the
    standing height is averaged over the pre- and post-jump stance.

    Under perspective the result depends on where take-off falls between
    two frames, so each cell is the mean absolute error over ``phases``
    take-off times spread evenly across one frame period.
    """
    if phases < 1:
        raise ValueError("phases must be at least 1")
    ae = np.zeros((len(angles), len(distances)))
    offsets = np.arange(phases) / (phases * fps)
    for i, a in enumerate(angles):
        for j, d in enumerate(distances):
            camera = table_camera(camera_kind, d, f)
            for dt in offsets:
                cell_scene = JumperScene(
                    **{**scene.to_dict(), "approach_angle": a, "distance": d, "fps": fps, "time_offset": dt}
                )
                synth = generate_jumper(cell_scene, camera)
                est = estimate_height(synth.pose, config=config)
                ae[i, j] += abs(est.aggregate_h - synth.truth.h_true) * 100.0 / phases
    return ErrorTable(ae, tuple(float(d) for d in distances), tuple(float(a) for a in angles), camera_kind)
