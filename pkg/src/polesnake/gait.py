"""Joint-angle generation by curvature integration.

A backbone curve is turned into joint commands with the bellows model:
joint ``i`` (1-based, at arc position ``i*l``) integrates curvature over
the two-module window ``[(i-1)*l, (i+1)*l]``.  Because the joints
alternate between the dorsal and lateral axes, each family's windows tile
the body without double counting.  The full gait equations additionally
rotate the (dorsal, lateral) pair by the running torsion integral and by
the phase offset phi0, which is what lets a fixed curve family roll or
inch over time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .backbone import BackboneCurve, GaitParams, resample_by_arclength, sample_backbone
from .diffgeo import CurvatureProfile, frenet_profile, windowed_trapezoid
from .errors import (
    DomainTooShort,
    InvalidParameter,
    JointLimitExceeded,
    PolesnakeError,
    StepError,
)

__all__ = [
    "RobotConfig",
    "JointAngles",
    "JointTrajectory",
    "Keyframe",
    "bellows_angles",
    "angle_components",
    "keyframe_angles",
    "generate_keyframe",
    "acl_trajectory",
    "rolling_params",
    "rolling_helix_trajectory",
]

AXES = ("dorsal", "lateral")


@dataclass(frozen=True)
class RobotConfig:
    """Geometry of the modular chain.

    ``first_joint_axis`` fixes the alternation: joint 1 rotates about that
    axis, joint 2 about the other, and so on.  ``joint_limit`` is the hard
    bound on |angle|; exceeding it at generation time is an error rather
    than a clamp, since clamping silently breaks shape fidelity.
    """

    n_modules: int = 20
    module_length: float = 0.0889
    joint_radius: float = 0.0381
    first_joint_axis: str = "dorsal"
    joint_limit: float = math.pi / 2

    def __post_init__(self):
        if self.n_modules < 2:
            raise InvalidParameter(f"n_modules must be >= 2, got {self.n_modules}")
        if not self.module_length > 0.0:
            raise InvalidParameter(f"module_length must be positive, got {self.module_length}")
        if not self.joint_radius > 0.0:
            raise InvalidParameter(f"joint_radius must be positive, got {self.joint_radius}")
        if self.first_joint_axis not in AXES:
            raise InvalidParameter(
                f"first_joint_axis must be 'dorsal' or 'lateral', got {self.first_joint_axis!r}"
            )
        if not self.joint_limit > 0.0:
            raise InvalidParameter(f"joint_limit must be positive, got {self.joint_limit}")

    def joint_axes(self) -> tuple[str, ...]:
        """Axis label of each joint, alternating from joint 1 outward."""
        first = AXES.index(self.first_joint_axis)
        return tuple(AXES[(first + i) % 2] for i in range(self.n_modules))

    @property
    def profile_span(self) -> float:
        """Arc length a curvature profile must cover: (n_modules + 1) * l."""
        return (self.n_modules + 1) * self.module_length


@dataclass(frozen=True)
class JointAngles:
    """One keyframe's joint angles, each tagged with its rotation axis."""

    angles: np.ndarray
    axes: tuple[str, ...]

    def __post_init__(self):
        arr = np.asarray(self.angles, dtype=float)
        object.__setattr__(self, "angles", arr)
        if arr.ndim != 1 or len(arr) != len(self.axes):
            raise InvalidParameter("angles and axes must have matching lengths")

    def __len__(self) -> int:
        return len(self.angles)


def _checked_angles(values: np.ndarray, robot: RobotConfig) -> JointAngles:
    values = np.asarray(values, dtype=float)
    over = np.flatnonzero(np.abs(values) > robot.joint_limit)
    if len(over):
        i = int(over[0])
        raise JointLimitExceeded(i + 1, float(values[i]), robot.joint_limit)
    return JointAngles(angles=values, axes=robot.joint_axes())


def _joint_windows(robot: RobotConfig):
    l = robot.module_length
    return [((i - 1) * l, (i + 1) * l) for i in range(1, robot.n_modules + 1)]


def _check_domain(s: np.ndarray, robot: RobotConfig, what: str) -> None:
    tol = 1e-9 * max(1.0, robot.profile_span)
    if s[0] > tol or s[-1] < robot.profile_span - tol:
        raise DomainTooShort(
            f"{what} spans [{s[0]:g}, {s[-1]:g}] m but the body needs "
            f"[0, {robot.profile_span:g}] m"
        )


def bellows_angles(kappa_dorsal, kappa_lateral, robot: RobotConfig) -> JointAngles:
    """Joint angles from separate dorsal and lateral curvature functions.

    Each curvature is given as an ``(s, values)`` pair of equal-length
    arrays.  Joint ``i`` integrates the curvature matching its axis over
    its two-module window.
    """
    s_d, k_d = (np.asarray(a, dtype=float) for a in kappa_dorsal)
    s_l, k_l = (np.asarray(a, dtype=float) for a in kappa_lateral)
    _check_domain(s_d, robot, "dorsal curvature")
    _check_domain(s_l, robot, "lateral curvature")
    axes = robot.joint_axes()
    angles = np.empty(robot.n_modules)
    for idx, (a, b) in enumerate(_joint_windows(robot)):
        if axes[idx] == "dorsal":
            angles[idx] = windowed_trapezoid(s_d, k_d, a, b)
        else:
            angles[idx] = windowed_trapezoid(s_l, k_l, a, b)
    return _checked_angles(angles, robot)


def angle_components(
    profile: CurvatureProfile, robot: RobotConfig, phi0: float = 0.0
) -> tuple[np.ndarray, np.ndarray]:
    """Dorsal and lateral angle formulas evaluated for every joint.

    For joint ``i`` with window integrals ``(C_i, S_i)`` of the cosine- and
    sine-weighted curvature:

        lateral(i) = sin(phi0) * C_i + cos(phi0) * S_i
        dorsal(i)  = cos(phi0) * C_i - sin(phi0) * S_i

    i.e. phi0 rotates the (dorsal, lateral) pair, which preserves the
    per-joint norm sqrt(C_i^2 + S_i^2).
    """
    _check_domain(profile.s, robot, "curvature profile")
    cos_psi = profile.kappa * np.cos(profile.tau_integral)
    sin_psi = profile.kappa * np.sin(profile.tau_integral)
    windows = _joint_windows(robot)
    big_c = np.array([windowed_trapezoid(profile.s, cos_psi, a, b) for a, b in windows])
    big_s = np.array([windowed_trapezoid(profile.s, sin_psi, a, b) for a, b in windows])
    lateral = math.sin(phi0) * big_c + math.cos(phi0) * big_s
    dorsal = math.cos(phi0) * big_c - math.sin(phi0) * big_s
    return dorsal, lateral


def keyframe_angles(
    profile: CurvatureProfile, robot: RobotConfig, phi0: float = 0.0
) -> JointAngles:
    """Joint angles for one keyframe, selecting each joint's axis formula."""
    dorsal, lateral = angle_components(profile, robot, phi0)
    axes = robot.joint_axes()
    picked = np.where([ax == "dorsal" for ax in axes], dorsal, lateral)
    return _checked_angles(picked, robot)


@dataclass(frozen=True)
class Keyframe:
    """One gait instant: resampled curve, its profile, phase, and angles."""

    time: float
    curve: BackboneCurve
    profile: CurvatureProfile
    angles: JointAngles
    phi0: float = 0.0


def generate_keyframe(
    params: GaitParams,
    robot: RobotConfig,
    h: float,
    n_curve_samples: int = 4001,
    n_profile_samples: int = 1001,
) -> Keyframe:
    """Run the per-keyframe pipeline: sample, resample, profile, angles."""
    curve = sample_backbone(params, h, n_curve_samples)
    uniform = resample_by_arclength(curve, n_profile_samples)
    profile = frenet_profile(uniform)
    phi0 = params.phase_offset(h)
    angles = keyframe_angles(profile, robot, phi0)
    return Keyframe(time=h, curve=uniform, profile=profile, angles=angles, phi0=phi0)


@dataclass(frozen=True)
class JointTrajectory:
    """Timed joint-angle commands, ``n_steps`` per cycle at period/n_steps."""

    steps: tuple[tuple[float, JointAngles], ...]
    n_steps: int
    cycles: int

    def __len__(self) -> int:
        return len(self.steps)


def _assemble_trajectory(
    params: GaitParams,
    robot: RobotConfig,
    n_steps: int,
    cycles: int,
    n_curve_samples: int,
    n_profile_samples: int,
) -> JointTrajectory:
    if n_steps < 1:
        raise InvalidParameter(f"n_steps must be >= 1, got {n_steps}")
    if cycles < 1:
        raise InvalidParameter(f"cycles must be >= 1, got {cycles}")
    dt = params.period / n_steps
    base: list[JointAngles] = []
    for j in range(n_steps):
        try:
            kf = generate_keyframe(params, robot, j * dt, n_curve_samples, n_profile_samples)
        except PolesnakeError as exc:
            raise StepError(j, str(exc)) from exc
        base.append(kf.angles)
    steps = tuple(
        ((c * n_steps + j) * dt, base[j]) for c in range(cycles) for j in range(n_steps)
    )
    return JointTrajectory(steps=steps, n_steps=n_steps, cycles=cycles)


def acl_trajectory(
    params: GaitParams,
    robot: RobotConfig,
    n_steps: int = 220,
    cycles: int = 1,
    n_curve_samples: int = 4001,
    n_profile_samples: int = 1001,
) -> JointTrajectory:
    """Full inching-gait trajectory: one keyframe pipeline per time step.

    The single-cycle block is computed once and repeated; the gait is
    periodic by construction when ``freq_time * period`` is a multiple of
    2*pi.
    """
    return _assemble_trajectory(
        params, robot, n_steps, cycles, n_curve_samples, n_profile_samples
    )


def rolling_params(params: GaitParams) -> GaitParams:
    """Parameters realizing the rolling-helix baseline for this rig.

    The axial modulation is removed (constant helix, so the shape is
    frozen regardless of keyframe time) and the phase offset advances by
    2*pi per cycle, rolling the wrap once around the pole.
    """
    return replace(params, amp_long=0.0, phi0_rate=2.0 * math.pi / params.period)


def rolling_helix_trajectory(
    params: GaitParams,
    robot: RobotConfig,
    n_steps: int = 220,
    cycles: int = 1,
    n_curve_samples: int = 4001,
    n_profile_samples: int = 1001,
) -> JointTrajectory:
    """Rolling-helix baseline trajectory; ``amp_long`` is always ignored."""
    return _assemble_trajectory(
        rolling_params(params), robot, n_steps, cycles, n_curve_samples, n_profile_samples
    )
