"""Property tests: invariances the pipeline must respect on random inputs."""

from dataclasses import replace

import numpy as np
import pytest
from conftest import lead_in_scene
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from gravheight.com import KeypointFrame, MassTable, Trajectory2D, com_point
from gravheight.estimate import compute_error_report, estimate_height
from gravheight.events import detect_flight_segments
from gravheight.fit import fit_parabola_lsq
from gravheight.sim import CameraModel, corrupt, generate_jumper, project

MANY = settings(max_examples=1000)

finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)
positive = st.floats(1e-3, 1e3, allow_nan=False, allow_infinity=False)


def _poses():
    cams = [
        CameraModel.scaled_orthographic(1000.0, 4.0),
        CameraModel.affine(300.0 * np.array([[1.0, 0.04, 0.02], [-0.03, 1.0, 0.06]])),
    ]
    out = []
    for k, (n, cm) in enumerate([(1, 0.1), (2, 0.0), (3, 0.15)]):
        scene = lead_in_scene(n_jumps=n, countermovement=cm, jump_height=0.12 + 0.05 * k)
        out.append(corrupt(generate_jumper(scene, cams[k % 2]), 0.5, seed=k).pose)
    return out


POSES = _poses()
BASELINES = [estimate_height(p) for p in POSES]


@MANY
@given(k=st.integers(0, len(POSES) - 1), s=st.floats(0.01, 100.0))
def test_height_is_pixel_scale_invariant(k, s):
    pose = POSES[k]
    scaled = replace(pose, joints=pose.joints * s, image_height=pose.image_height * s)
    est = estimate_height(scaled)
    base = BASELINES[k]
    assert [(p.start, p.end) for p in est.per_segment] == [(p.start, p.end) for p in base.per_segment]
    assert est.aggregate_h == pytest.approx(base.aggregate_h, rel=1e-9)
    assert est.aggregate_q * s == pytest.approx(base.aggregate_q, rel=1e-9)


@st.composite
def parabola_samples(draw):
    n = draw(st.integers(4, 80))
    fps = draw(st.sampled_from([25.0, 30.0, 60.0, 120.0, 240.0]))
    t0 = draw(st.floats(-100.0, 100.0))
    coef = draw(arrays(float, 3, elements=st.floats(-1e4, 1e4)))
    noise = draw(arrays(float, n, elements=st.floats(-5.0, 5.0)))
    t = t0 + np.arange(n) / fps
    tc = t - t0
    y = coef[0] * tc**2 + coef[1] * tc + coef[2] + noise
    return t, y


@MANY
@given(data=parabola_samples(), shift=st.floats(-1e3, 1e3))
def test_curvature_is_time_shift_invariant(data, shift):
    t, y = data
    a = fit_parabola_lsq(np.column_stack([t, y]))
    b = fit_parabola_lsq(np.column_stack([t + shift, y]))
    span = t[-1] - t[0]
    scale = (np.abs(y).max() + 1.0) / span**2
    assert abs(a.coeffs[0] - b.coeffs[0]) <= 1e-8 * scale


@MANY
@given(
    points=arrays(float, (17, 3), elements=st.floats(-10.0, 10.0)),
    matrix=arrays(float, (2, 3), elements=st.floats(-1e3, 1e3)),
    weights=arrays(float, 17, elements=st.floats(0.0, 1.0)),
)
def test_com_commutes_with_affine_projection(points, matrix, weights):
    assume(weights.sum() > 1e-3)
    masses = MassTable(weights)
    cam = CameraModel.affine(matrix)
    com_of_projection = com_point(KeypointFrame(project(cam, points), np.ones(17)), masses)
    projection_of_com = project(cam, masses.weights @ points)
    tol = 1e-9 * (np.abs(matrix).sum() * 10.0 + 1.0)
    np.testing.assert_allclose(com_of_projection, projection_of_com, rtol=0, atol=tol)


@MANY
@given(weights=arrays(float, st.integers(1, 40), elements=st.floats(0.0, 1e6)), s=positive)
def test_mass_table_normalises(weights, s):
    assume(weights.sum() > 0)
    table = MassTable(weights)
    assert table.weights.sum() == pytest.approx(1.0, abs=1e-12)
    assert np.all(table.weights >= 0)
    np.testing.assert_allclose(MassTable(weights * s).weights, table.weights, rtol=1e-12, atol=1e-15)
    np.testing.assert_allclose(MassTable.from_text(table.to_text()).weights, table.weights, rtol=1e-15)


@MANY
@given(
    pairs=arrays(
        float,
        st.tuples(st.integers(1, 50), st.just(2)),
        elements=st.floats(0.5, 2.5),
    )
)
def test_mae_bounds_bias(pairs):
    r = compute_error_report(pairs)
    assert r.mae >= abs(r.me) - 1e-12
    assert r.mae_rel >= abs(r.me_rel) - 1e-12
    assert r.sd_abs >= 0 and r.sd_signed >= 0
    assert r.n == len(pairs)


GRID = 1024.0


@st.composite
def jump_tracks(draw):
    """Stance with noise and a few parabolic hops."""
    fps = draw(st.sampled_from([30.0, 60.0]))
    n = draw(st.integers(150, 400))
    rng = np.random.default_rng(draw(st.integers(0, 2**32 - 1)))
    t = np.arange(n) / fps
    y = rng.normal(0.0, draw(st.just(0.0) | st.floats(0.05, 1.0)), n)
    start = 110
    for _ in range(draw(st.integers(0, 3))):
        dur = draw(st.floats(0.2, 0.6))
        m = int(dur * fps)
        if start + m + 5 >= n:
            break
        tau = np.arange(1, m) / fps
        y[start + 1 : start + m] += 0.5 * 2400.0 * tau * (dur - tau)
        start += m + draw(st.integers(15, 40))
    # a 1/1024 px grid keeps every shift below exactly representable
    y = np.round(y * GRID) / GRID
    valid = rng.random(n) > draw(st.floats(0.0, 0.1))
    valid[:5] = True
    return Trajectory2D.from_points(t, np.zeros(n), np.where(valid, y, np.nan), valid)


@MANY
@given(traj=jump_tracks(), steps=st.integers(-(10**7), 10**7), mode=st.sampled_from(["on_spot", "lateral"]))
def test_segments_ignore_vertical_offset_and_are_well_formed(traj, steps, mode):
    segs, _ = detect_flight_segments(traj, mode=mode)
    moved = Trajectory2D(traj.t, traj.xy + [0.0, steps / GRID], traj.valid)
    moved_segs, _ = detect_flight_segments(moved, mode=mode)
    assert [(s.start, s.end, s.peak) for s in moved_segs] == [(s.start, s.end, s.peak) for s in segs]
    previous_end = -1
    for s in segs:
        assert s.start <= s.peak <= s.end and s.end - s.start >= 2
        assert traj.valid[s.peak]
        assert s.start > previous_end
        previous_end = s.end
