import numpy as np
import pytest

from polesnake import GaitParams, RobotConfig, build_run_spec


def circle_params(r=1.0, t_max=2.0 * np.pi):
    """Planar circle: zero pitch, no modulation."""
    return GaitParams(radius=r, pitch=0.0, t_min=0.0, t_max=t_max)


def helix_params(r=1.0, p=1.0, t_max=2.0 * np.pi, **kw):
    """Constant helix with analytic curvature r/(r^2+p^2), torsion p/(r^2+p^2)."""
    return GaitParams(radius=r, pitch=p, t_min=0.0, t_max=t_max, **kw)


def analytic_helix_frenet(r, p):
    denom = r * r + p * p
    return r / denom, p / denom


@pytest.fixture(scope="session")
def default_spec():
    return build_run_spec()


@pytest.fixture(scope="session")
def small_robot():
    return RobotConfig(n_modules=4, module_length=0.5)
