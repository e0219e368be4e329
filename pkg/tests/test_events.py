import numpy as np
import pytest

from gravheight.com import MassTable, Trajectory2D, com_trajectory
from gravheight.errors import NoValidSamples, SegmentTooShort
from gravheight.events import (
    LATERAL,
    ON_SPOT,
    FlightSegment,
    detect_flight_segments,
    estimate_floor,
    find_peaks,
    select_flight_segment,
    select_flight_segment_lateral,
    side_minima,
)
from gravheight.sim import CameraModel, JumperScene, corrupt, generate_jumper

from conftest import lead_in_scene


def traj_of(y, valid=None, fps=30.0):
    y = np.asarray(y, dtype=float)
    return Trajectory2D.from_points(np.arange(y.size) / fps, np.zeros(y.size), y, valid)


def sim_com(scene, camera=None):
    synth = generate_jumper(scene, camera or CameraModel.scaled_orthographic(1000.0, 4.0))
    return synth, com_trajectory(synth.pose, MassTable.default())


def test_segment_invariants():
    with pytest.raises(ValueError):
        FlightSegment(5, 6, 5)
    with pytest.raises(ValueError):
        FlightSegment(3, 9, 10)
    assert len(FlightSegment(2, 8, 4)) == 7


def test_monotone_peak_at_end():
    assert find_peaks(traj_of(np.arange(30))) == [29]


def test_parabola_single_peak():
    k = np.arange(31)
    assert find_peaks(traj_of(100 - (k - 15) ** 2)) == [15]


def test_flat_top_reports_first_index():
    assert find_peaks(traj_of([0, 1, 5, 5, 1, 0])) == [2]


def test_long_flat_stance_is_not_a_peak():
    assert find_peaks(traj_of(np.zeros(40))) == []


def test_invalid_samples_are_skipped():
    y = np.array([0, 1, 3, 99, 2, 1, 0], dtype=float)
    valid = np.ones(7, dtype=bool)
    valid[3] = False
    assert find_peaks(traj_of(y, valid), half_window=2) == [2]


def test_peaks_at_analytic_apex_frames():
    scene = lead_in_scene(n_jumps=3, countermovement=0.1, jump_height=0.2)
    synth, traj = sim_com(scene)
    apex_frames = np.array(synth.truth.apex_times) * scene.fps
    peaks = find_peaks(traj)
    assert len(peaks) == 3
    assert np.all(np.abs(np.array(peaks) - apex_frames) <= 1)


def test_floor_constant():
    assert estimate_floor(traj_of(np.full(150, 50.0))) == 50.0


def test_floor_even_count_median():
    assert estimate_floor(traj_of(np.tile([10.0, 20.0], 60))) == 15.0


def test_floor_ignores_invalid_and_short_clips():
    valid = np.array([False, True, True])
    assert estimate_floor(traj_of([1e6, 4.0, 6.0], valid)) == 5.0


def test_floor_without_valid_samples():
    with pytest.raises(NoValidSamples):
        estimate_floor(traj_of([1.0, 2.0], np.zeros(2, dtype=bool)))


def test_floor_matches_standing_com():
    # stand 1 s, jump once, stand again
    base = JumperScene(countermovement=0.05, fps=30.0)
    scene = JumperScene(**{**base.to_dict(), "duration": base.active_time + 5.0})
    scene = JumperScene(**{**scene.to_dict(), "time_offset": 1.0 - 0.5 * (scene.duration - scene.active_time)})
    synth, traj = sim_com(scene)
    standing = traj.y[0]
    assert abs(estimate_floor(traj) - standing) < 0.5


def test_fifteen_percent_rule():
    k = np.arange(41)
    y = 100 - 0.25 * (k - 20) ** 2
    seg = select_flight_segment(traj_of(y), 20, 0.0)
    kept = np.flatnonzero(y >= 15)
    assert (seg.start, seg.end) == (kept[0], kept[-1])
    assert seg.floor_y == 0.0


def test_zero_fraction_keeps_everything_above_floor():
    y = np.array([-1, 0.5, 3, 8, 3, 0.5, -1, 4], dtype=float)
    seg = select_flight_segment(traj_of(y), 3, 0.0, fraction=0.0)
    assert (seg.start, seg.end) == (1, 5)


def test_too_short():
    with pytest.raises(SegmentTooShort):
        select_flight_segment(traj_of([0, 0, 10, 0, 0]), 2, 0.0)


def test_peak_below_floor_is_rejected():
    with pytest.raises(ValueError):
        select_flight_segment(traj_of([0, 1, 2, 1, 0]), 2, 5.0)


def test_no_contact_frames_leak():
    scene = lead_in_scene(countermovement=0.12, takeoff_rise=0.01, n_jumps=2, fps=60.0)
    synth, traj = sim_com(scene)
    segs, _ = detect_flight_segments(traj)
    assert len(segs) == 2
    for s in segs:
        assert not synth.truth.contact[s.start : s.end + 1].any()


def test_lateral_symmetric_upper_half():
    k = np.arange(21)
    y = 100 - (k - 10) ** 2
    y = np.clip(y, 0, None).astype(float)
    seg = select_flight_segment_lateral(traj_of(y), 10)
    kept = np.flatnonzero(y >= 50)
    assert (seg.start, seg.end) == (kept[0], kept[-1])


def test_lateral_asymmetric_minima():
    y = np.array([0, 20, 40, 49, 50, 70, 100, 71, 69, 50, 40, 45], dtype=float)
    assert side_minima(traj_of(y), 6, half_window=2) == (0.0, 40.0)
    seg = select_flight_segment_lateral(traj_of(y), 6, half_window=2)
    # left cut 50, right cut 70
    assert (seg.start, seg.end) == (4, 7)


def test_lateral_boundary_counts_as_minimum():
    y = np.array([30, 60, 100, 60, 30], dtype=float)
    assert side_minima(traj_of(y), 2) == (30.0, 30.0)


def test_side_minima_ignore_dips_inside_the_window():
    # a one-frame dip beside the apex is not the landing minimum
    y = np.array([0, 0, 0, 40, 80, 99, 100, 99.5, 99.8, 80, 40, 0, 0, 0], dtype=float)
    assert side_minima(traj_of(y), 6, half_window=3) == (0.0, 0.0)
    assert side_minima(traj_of(y), 6, half_window=1) == (0.0, 99.5)


def test_side_without_window_minimum_uses_lowest_sample():
    y = np.array([0, 20, 40, 100, 71, 69, 50, 40, 45], dtype=float)
    assert side_minima(traj_of(y), 3, half_window=10) == (0.0, 40.0)


def test_noisy_lateral_jump_has_one_segment():
    scene = lead_in_scene(jump_height=0.3, fps=60.0)
    for seed in range(5):
        synth = corrupt(generate_jumper(scene, CameraModel.scaled_orthographic(1000.0, 4.0)), 0.5, seed=seed)
        segs, _ = detect_flight_segments(com_trajectory(synth.pose, MassTable.default()), mode="lateral")
        assert len(segs) == 1
        assert not synth.truth.contact[segs[0].start : segs[0].end + 1].any()


def test_running_flights_are_shorter_than_jumps():
    jump = lead_in_scene(jump_height=0.25, jump_length=1.0, fps=60.0)
    run = lead_in_scene(jump_height=0.05, jump_length=1.0, n_jumps=4, jump_interval=0.3, fps=60.0)
    lens = {}
    for name, scene in (("jump", jump), ("run", run)):
        synth, traj = sim_com(scene)
        segs, _ = detect_flight_segments(traj, mode=LATERAL)
        assert segs
        for s in segs:
            assert not synth.truth.contact[s.start : s.end + 1].any()
        lens[name] = max(len(s) for s in segs)
    assert lens["run"] < lens["jump"]


def test_detect_drops_small_bumps():
    k = np.arange(200)
    y = np.where((k > 100) & (k < 130), 400 - 1.6 * (k - 115) ** 2, 0.0)
    y = np.clip(y, 0, None)
    y[40] = 3.0  # stance jitter
    segs, _ = detect_flight_segments(traj_of(y))
    assert [s.peak for s in segs] == [115]


def test_detect_unknown_mode():
    with pytest.raises(ValueError):
        detect_flight_segments(traj_of(np.zeros(5)), mode="sideways")


def test_standing_clip_has_no_segments():
    assert detect_flight_segments(traj_of(np.full(200, 7.0)), mode=ON_SPOT) == ([], [])


def test_lower_peak_inside_a_flight_is_dropped():
    # one long flight with a dip: the lower top's region would swallow the higher one
    stance = np.zeros(110)
    bump = np.r_[np.linspace(0, 100, 15), np.linspace(100, 80, 12)[1:], np.linspace(80, 90, 12)[1:], np.linspace(90, 0, 10)[1:]]
    y = np.r_[stance, bump, np.zeros(20)]
    segs, skipped = detect_flight_segments(traj_of(y))
    assert len(segs) == 1 and segs[0].peak == 110 + 14
    assert any("overlaps" in why for _, why in skipped)


def test_lateral_minima_stop_at_neighbouring_peaks():
    # the dip at 6 is not a window minimum (the -4 at 2 is within reach), so an
    # unbounded search from the right peak would cut against -4 and swallow the left one
    y = np.array([0, 0, -4, 1.5, 2.6, 1.5, -0.5, 1.8, 2.3, 2.5, 2.3, 1.8, -1.8, -2, -2, -2], dtype=float)
    traj = traj_of(y)
    assert side_minima(traj, 9, half_window=4) == (-4.0, -2.0)
    assert side_minima(traj, 9, half_window=4, bounds=(4, 16)) == (-0.5, -2.0)
    segs, skipped = detect_flight_segments(traj, mode="lateral", half_window=4)
    assert [(s.start, s.end, s.peak) for s in segs] == [(3, 5, 4), (7, 11, 9)]
    assert skipped == []
