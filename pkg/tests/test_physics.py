import numpy as np
import pytest

from gravheight.errors import NonPositiveAcceleration
from gravheight.physics import (
    G_DEFAULT,
    NOSE_ANKLE_FACTOR,
    ConversionFactor,
    FreeFallParams,
    HeightKind,
    HeightMeasurement,
    conversion_factor,
    free_fall_position,
    pixel_to_metric_height,
)

DOWN = np.array([0.0, -9.81, 0.0])


def test_defaults():
    assert G_DEFAULT == 9.81
    assert NOSE_ANKLE_FACTOR == 1.17
    assert HeightMeasurement(10.0, HeightKind.NOSE_ANKLE).correction_c == 1.17


def test_position_at_zero_is_origin():
    p = FreeFallParams(np.zeros(3), np.zeros(3), np.array([0.3, -2.0, 5.0]))
    np.testing.assert_array_equal(free_fall_position(p, 0.0), np.zeros(3))


def test_one_second_drop():
    # half of 9.81, printed as 4.9 m
    p = FreeFallParams(np.zeros(3), np.zeros(3), DOWN)
    drop = -free_fall_position(p, 1.0)[1]
    assert drop == pytest.approx(4.905, abs=1e-12)
    assert round(drop, 1) == 4.9


def test_hand_evaluated_position():
    p = FreeFallParams(np.array([1.0, 2.0, 3.0]), np.array([2.0, 0.0, 0.0]), DOWN)
    np.testing.assert_allclose(free_fall_position(p, 2.0), [5.0, -17.62, 3.0], rtol=0, atol=1e-12)


def test_position_vectorised_over_time():
    p = FreeFallParams(np.zeros(3), np.array([1.0, 3.0, 0.0]), DOWN)
    t = np.array([0.0, 0.5, 1.0])
    out = free_fall_position(p, t)
    assert out.shape == (3, 3)
    np.testing.assert_allclose(out[1], free_fall_position(p, 0.5))


def test_unit_ratio():
    q = conversion_factor(9.81, 9.81)
    assert isinstance(q, ConversionFactor)
    assert q.q == 1.0


def test_reference_factor_at_four_metres():
    assert conversion_factor(2392.68).q == pytest.approx(0.0041, abs=5e-8)


@pytest.mark.parametrize("a", [0.0, -3.0, float("nan")])
def test_non_positive_acceleration(a):
    with pytest.raises(NonPositiveAcceleration):
        conversion_factor(a)


def test_q_recomputes_exactly():
    c = conversion_factor(1234.5, 9.81)
    assert c.q == c.g / c.a_px


def test_total_height():
    m = HeightMeasurement(400.0, HeightKind.TOTAL)
    assert pixel_to_metric_height(m, 0.0041) == pytest.approx(1.64, abs=1e-12)


def test_nose_ankle_height():
    m = HeightMeasurement(350.0, HeightKind.NOSE_ANKLE, 1.17)
    assert pixel_to_metric_height(m, conversion_factor(9.81 / 0.0041)) == pytest.approx(1.67895, abs=1e-9)


@pytest.mark.parametrize("kw", [{"h_px": 0.0}, {"h_px": -1.0}, {"h_px": 5.0, "correction_c": 0.0}])
def test_measurement_validation(kw):
    with pytest.raises(ValueError):
        HeightMeasurement(**kw)
