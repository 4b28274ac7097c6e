"""Deterministic file output: CSV exports, reports, and manifests.

All numeric fields use 9-significant-digit formatting and files are
written atomically (temp file, then rename), so identical inputs produce
byte-identical outputs suitable for golden-file comparison.  Angles are
always radians in files.
"""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path
from typing import Iterable, Sequence

from . import __version__
from .backbone import BackboneCurve
from .chassis import VirtualChassis
from .contact import ContactSet, DisplacementEstimate
from .diffgeo import CurvatureProfile
from .gait import JointTrajectory
from .kinematics import PoseChain, rotation_to_quaternion

__all__ = [
    "fmt",
    "write_text_atomic",
    "write_trajectory_csv",
    "write_curves_csv",
    "write_profile_csv",
    "write_poses_csv",
    "write_chassis_csv",
    "write_contacts_csv",
    "write_displacement_report",
    "write_manifest",
]


def fmt(value: float) -> str:
    """Stable 9-significant-digit rendering of a float."""
    return format(float(value), ".9g")


def write_text_atomic(path: str | Path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)
    return path


def _csv(header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(row) for row in rows)
    return "\n".join(lines) + "\n"


def write_trajectory_csv(path: str | Path, trajectory: JointTrajectory) -> Path:
    """Joint commands, step-major then joint-minor; joint_index is 1-based."""
    rows = []
    for step, (time, angles) in enumerate(trajectory.steps):
        for j in range(len(angles)):
            rows.append(
                (str(step), fmt(time), str(j + 1), angles.axes[j], fmt(angles.angles[j]))
            )
    return write_text_atomic(
        path, _csv(("step", "time_s", "joint_index", "axis", "angle_rad"), rows)
    )


def write_curves_csv(path: str | Path, curves: Sequence[BackboneCurve]) -> Path:
    rows = []
    for curve in curves:
        for i, (pt, s) in enumerate(zip(curve.points, curve.s)):
            rows.append(
                (fmt(curve.keyframe_time), str(i), fmt(pt[0]), fmt(pt[1]), fmt(pt[2]), fmt(s))
            )
    return write_text_atomic(path, _csv(("h", "idx", "x", "y", "z", "s"), rows))


def write_profile_csv(path: str | Path, profile: CurvatureProfile) -> Path:
    rows = [
        (fmt(s), fmt(k), fmt(t), fmt(ti))
        for s, k, t, ti in zip(profile.s, profile.kappa, profile.tau, profile.tau_integral)
    ]
    return write_text_atomic(path, _csv(("s", "kappa", "tau", "tau_integral"), rows))


def write_poses_csv(path: str | Path, chains: Sequence[PoseChain]) -> Path:
    rows = []
    for step, chain in enumerate(chains):
        for m, pose in enumerate(chain.module_poses):
            q = rotation_to_quaternion(pose.rotation)
            p = pose.translation
            rows.append(
                (str(step), str(m + 1), fmt(p[0]), fmt(p[1]), fmt(p[2]),
                 fmt(q[0]), fmt(q[1]), fmt(q[2]), fmt(q[3]))
            )
    return write_text_atomic(
        path, _csv(("step", "module_index", "x", "y", "z", "qw", "qx", "qy", "qz"), rows)
    )


def write_chassis_csv(path: str | Path, frames: Sequence[VirtualChassis]) -> Path:
    header = (
        "step", "ox", "oy", "oz",
        "a11", "a12", "a13", "a21", "a22", "a23", "a31", "a32", "a33",
        "sv1", "sv2", "sv3",
    )
    rows = []
    for step, frame in enumerate(frames):
        row = [str(step)]
        row.extend(fmt(v) for v in frame.origin)
        row.extend(fmt(v) for v in frame.axes.ravel())
        row.extend(fmt(v) for v in frame.singular_values)
        rows.append(tuple(row))
    return write_text_atomic(path, _csv(header, rows))


def write_contacts_csv(path: str | Path, contact_sets: Sequence[ContactSet]) -> Path:
    rows = []
    for cs in contact_sets:
        for j, pt, ax in zip(cs.joint_indices, cs.points, cs.axial_coords):
            rows.append((str(cs.step), str(j), fmt(pt[0]), fmt(pt[1]), fmt(pt[2]), fmt(ax)))
    return write_text_atomic(
        path, _csv(("step", "joint_index", "x", "y", "z", "axial_coord"), rows)
    )


def write_displacement_report(
    path: str | Path, estimate: DisplacementEstimate, n_steps: int
) -> Path:
    """Human-readable displacement summary with per-step detail."""
    lines = ["displacement estimate", "====================="]
    lines.append(f"cycles: {estimate.cycles}")
    lines.append(f"steps per cycle: {n_steps}")
    lines.append(f"roll term per cycle (m): {fmt(estimate.roll_term)}")
    for c in range(estimate.cycles):
        chunk = estimate.per_step_dx[c * n_steps : (c + 1) * n_steps]
        lines.append(f"cycle {c + 1} sum of dx (m): {fmt(sum(chunk))}")
    lines.append(f"sum of per-step dx (m): {fmt(sum(estimate.per_step_dx))}")
    lines.append(f"total displacement (m): {fmt(estimate.total)}")
    if estimate.flagged_steps:
        flagged = " ".join(str(s) for s in estimate.flagged_steps)
        lines.append(f"steps with mostly-changed contact sets: {flagged}")
    else:
        lines.append("steps with mostly-changed contact sets: none")
    lines.append("per-step dx (m):")
    for i, dx in enumerate(estimate.per_step_dx):
        lines.append(f"  step {i + 1}: {fmt(dx)}")
    return write_text_atomic(path, "\n".join(lines) + "\n")


def _sha256(path: Path) -> str:
    digest = hashlib.sha256(path.read_bytes()).hexdigest()
    return f"sha256:{digest}"


def write_manifest(
    path: str | Path, command: str, spec_mapping: dict, files: Sequence[Path]
) -> Path:
    """Record the resolved inputs and a content hash of every output."""
    manifest = {
        "artifact": "polesnake",
        "version": __version__,
        "command": command,
        "inputs": spec_mapping,
        "files": {p.name: _sha256(p) for p in files},
    }
    return write_text_atomic(path, json.dumps(manifest, indent=2, sort_keys=True) + "\n")
