import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from gravheight.sim import CameraModel, JumperScene, generate_jumper

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile("default")


def lead_in_scene(**kw):
    """Scene whose clip opens and closes with more stance than the floor window."""
    base = JumperScene(**kw)
    pad = 100 / base.fps + 1.0
    return JumperScene(**{**base.to_dict(), "duration": base.active_time + 2 * pad})


@pytest.fixture
def ortho_jump():
    scene = lead_in_scene(jump_height=0.15, fps=30.0, countermovement=0.1)
    return generate_jumper(scene, CameraModel.scaled_orthographic(1000.0, 4.0))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
