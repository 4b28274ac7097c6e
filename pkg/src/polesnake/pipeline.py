"""End-to-end simulation: gait, kinematics, body frames, displacement.

A run generates one cycle of keyframes, realizes each keyframe in the
world frame (each chain is seated on its own curve's start frame, so the
wrap stays coaxial with the pole), then walks the frame sequence to
compute body frames, contact sets, and the displacement estimate.

Frames cover ``cycles * n_steps`` steps plus one closing frame that
repeats the phase-0 shape, so the displacement sum spans whole cycles
exactly; joint-command trajectories keep ``cycles * n_steps`` rows.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chassis import VirtualChassis, chassis_trajectory
from .config import RunSpec
from .contact import ContactSet, DisplacementEstimate, detect_contacts, estimate_displacement
from .errors import PolesnakeError, StepError
from .gait import (
    JointTrajectory,
    Keyframe,
    generate_keyframe,
    rolling_params,
)
import numpy as np

from .kinematics import (
    PoseChain,
    RigidTransform,
    curve_start_frame,
    forward_kinematics,
    rigid_registration,
    rot_x,
    transform_chain,
)

__all__ = ["SimulationResult", "effective_params", "run_trajectory", "run_simulation"]


def effective_params(spec: RunSpec):
    """Gait parameters after applying the gait-type construction rules."""
    if spec.gait == "rolling":
        return rolling_params(spec.params)
    return spec.params


def _seat_frame(keyframe: Keyframe) -> RigidTransform:
    """Initial world pose of module 1 for a keyframe.

    The chain starts on its curve's start frame.  A nonzero phase offset
    rotates the bending pattern relative to the body, so the material
    frame is pre-rolled by the opposite angle about the start tangent;
    the realized shape then stays put while the body rolls, which is the
    physical motion.
    """
    base = curve_start_frame(keyframe.curve)
    if keyframe.phi0 != 0.0:
        base = base.compose(
            RigidTransform(rotation=rot_x(-keyframe.phi0), translation=np.zeros(3))
        )
    return base


def _realized_chain(keyframe: Keyframe, robot) -> PoseChain:
    """World-frame chain for a keyframe, registered onto its curve.

    Anchoring the chain only at the curve start lets discretization error
    accumulate one-sidedly and tilt the coil, which can push distal
    joints into the pole.  A rigid least-squares registration of the
    joint points onto their intended arc positions re-seats the chain
    symmetrically, keeping the wrap coaxial with the pole for every
    phase offset.
    """
    chain = forward_kinematics(robot, keyframe.angles, _seat_frame(keyframe))
    arc = robot.module_length * np.arange(1, robot.n_modules + 1)
    curve = keyframe.curve
    target = np.column_stack(
        [np.interp(arc, curve.s, curve.points[:, k]) for k in range(3)]
    )
    fit = rigid_registration(chain.joint_points, target)
    return transform_chain(chain, fit)


def _cycle_keyframes(spec: RunSpec) -> list[Keyframe]:
    params = effective_params(spec)
    dt = params.period / spec.n_steps
    frames = []
    for j in range(spec.n_steps):
        try:
            frames.append(
                generate_keyframe(
                    params, spec.robot, j * dt, spec.n_curve_samples, spec.n_profile_samples
                )
            )
        except StepError:
            raise
        except PolesnakeError as exc:
            raise StepError(j, str(exc)) from exc
    return frames


def run_trajectory(spec: RunSpec) -> JointTrajectory:
    """Joint-command trajectory for the spec's gait."""
    params = effective_params(spec)
    dt = params.period / spec.n_steps
    keyframes = _cycle_keyframes(spec)
    steps = tuple(
        ((c * spec.n_steps + j) * dt, keyframes[j].angles)
        for c in range(spec.cycles)
        for j in range(spec.n_steps)
    )
    return JointTrajectory(steps=steps, n_steps=spec.n_steps, cycles=spec.cycles)


@dataclass(frozen=True)
class SimulationResult:
    """Everything one simulation produces."""

    trajectory: JointTrajectory
    chains: tuple[PoseChain, ...]
    chassis: tuple[VirtualChassis, ...]
    contacts: tuple[ContactSet, ...]
    displacement: DisplacementEstimate


def run_simulation(spec: RunSpec) -> SimulationResult:
    """Full pipeline: trajectory, pose chains, body frames, displacement."""
    params = effective_params(spec)
    dt = params.period / spec.n_steps
    keyframes = _cycle_keyframes(spec)

    trajectory = JointTrajectory(
        steps=tuple(
            ((c * spec.n_steps + j) * dt, keyframes[j].angles)
            for c in range(spec.cycles)
            for j in range(spec.n_steps)
        ),
        n_steps=spec.n_steps,
        cycles=spec.cycles,
    )

    n_frames = spec.cycles * spec.n_steps + 1
    chains: list[PoseChain] = []
    contacts: list[ContactSet] = []
    for k in range(n_frames):
        kf = keyframes[k % spec.n_steps]
        try:
            chain = _realized_chain(kf, spec.robot)
            contacts.append(detect_contacts(chain, spec.pole, step=k))
        except StepError:
            raise
        except PolesnakeError as exc:
            raise StepError(k, str(exc)) from exc
        chains.append(chain)

    chassis = chassis_trajectory(chains)
    displacement = estimate_displacement(
        contacts, spec.robot.joint_radius, spec.cycles, spec.include_roll
    )
    return SimulationResult(
        trajectory=trajectory,
        chains=tuple(chains),
        chassis=tuple(chassis),
        contacts=tuple(contacts),
        displacement=displacement,
    )
