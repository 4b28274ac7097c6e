"""Forward kinematics of the alternating-axis module chain.

Module frames are chained by a fixed translation of one module length
along the local x axis followed by a revolute rotation: dorsal joints
rotate about the local z axis (positive angles bend toward local +y),
lateral joints bend toward local +z.  The lateral sense is chosen so that
positive torsion in a curvature profile precesses the bending plane the
same way the generated chain does; with the opposite sense the chain
winds against its source curve.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .backbone import BackboneCurve
from .diffgeo import finite_derivatives
from .errors import InvalidParameter
from .gait import JointAngles, RobotConfig

__all__ = [
    "RigidTransform",
    "PoseChain",
    "rot_x",
    "rot_y",
    "rot_z",
    "rigid_registration",
    "transform_chain",
    "forward_kinematics",
    "chain_to_curve_error",
    "curve_start_frame",
    "rotation_to_quaternion",
    "point_to_polyline_distance",
]


def rot_x(angle: float) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def rot_y(angle: float) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def rot_z(angle: float) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


@dataclass(frozen=True)
class RigidTransform:
    """Rotation plus translation; ``rotation`` columns are the frame axes."""

    rotation: np.ndarray
    translation: np.ndarray

    def __post_init__(self):
        rot = np.asarray(self.rotation, dtype=float)
        tra = np.asarray(self.translation, dtype=float)
        object.__setattr__(self, "rotation", rot)
        object.__setattr__(self, "translation", tra)
        if rot.shape != (3, 3) or tra.shape != (3,):
            raise InvalidParameter("rigid transform needs a 3x3 rotation and 3-vector")

    @classmethod
    def identity(cls) -> "RigidTransform":
        return cls(rotation=np.eye(3), translation=np.zeros(3))

    def compose(self, other: "RigidTransform") -> "RigidTransform":
        """This transform followed locally by ``other``."""
        return RigidTransform(
            rotation=self.rotation @ other.rotation,
            translation=self.translation + self.rotation @ other.translation,
        )

    def apply(self, points: np.ndarray) -> np.ndarray:
        return np.asarray(points, dtype=float) @ self.rotation.T + self.translation


@dataclass(frozen=True)
class PoseChain:
    """World-frame module poses, centers of mass, and articulation points.

    ``module_poses[i]`` has its origin at module ``i+1``'s proximal end;
    ``joint_points[i]`` is the articulation center of joint ``i+1``, which
    sits one module length beyond that origin (the last entry is the tip
    articulation).
    """

    module_poses: tuple[RigidTransform, ...]
    module_coms: np.ndarray
    joint_points: np.ndarray

    def __post_init__(self):
        coms = np.asarray(self.module_coms, dtype=float)
        joints = np.asarray(self.joint_points, dtype=float)
        object.__setattr__(self, "module_coms", coms)
        object.__setattr__(self, "joint_points", joints)

    def __len__(self) -> int:
        return len(self.module_poses)


def forward_kinematics(
    robot: RobotConfig, angles: JointAngles, base_pose: RigidTransform | None = None
) -> PoseChain:
    """Place the module chain in the world frame.

    Module 1 sits at ``base_pose``; each next module is offset one module
    length along the parent's local x axis and rotated by the parent's
    joint angle about its dorsal or lateral axis.  Module COMs are segment
    midpoints.  The last joint rotates only the tip frame, so it moves no
    module; its articulation point is still reported.
    """
    if len(angles) != robot.n_modules:
        raise InvalidParameter(
            f"expected {robot.n_modules} joint angles, got {len(angles)}"
        )
    pose = base_pose if base_pose is not None else RigidTransform.identity()
    l = robot.module_length
    poses = []
    coms = []
    joints = []
    for idx in range(robot.n_modules):
        poses.append(pose)
        x_axis = pose.rotation[:, 0]
        coms.append(pose.translation + 0.5 * l * x_axis)
        joint_point = pose.translation + l * x_axis
        joints.append(joint_point)
        angle = angles.angles[idx]
        if angles.axes[idx] == "dorsal":
            joint_rot = rot_z(angle)
        else:
            joint_rot = rot_y(-angle)
        pose = RigidTransform(
            rotation=pose.rotation @ joint_rot, translation=joint_point
        )
    return PoseChain(
        module_poses=tuple(poses),
        module_coms=np.array(coms),
        joint_points=np.array(joints),
    )


def rigid_registration(source: np.ndarray, target: np.ndarray) -> RigidTransform:
    """Least-squares rigid transform mapping ``source`` points onto ``target``.

    Closed-form solution via SVD of the cross-covariance, with the
    reflection case corrected so the result is a proper rotation.
    """
    src = np.asarray(source, dtype=float)
    tgt = np.asarray(target, dtype=float)
    if src.shape != tgt.shape or src.ndim != 2 or src.shape[1] != 3:
        raise InvalidParameter("registration needs matching (n, 3) point sets")
    if len(src) < 3:
        raise InvalidParameter("registration needs at least 3 point pairs")
    src_mean = src.mean(axis=0)
    tgt_mean = tgt.mean(axis=0)
    cov = (src - src_mean).T @ (tgt - tgt_mean)
    u, _, vt = np.linalg.svd(cov)
    d = np.sign(np.linalg.det(vt.T @ u.T))
    rot = vt.T @ np.diag([1.0, 1.0, d]) @ u.T
    return RigidTransform(rotation=rot, translation=tgt_mean - rot @ src_mean)


def transform_chain(chain: "PoseChain", transform: RigidTransform) -> "PoseChain":
    """Apply a rigid transform to every pose and point of a chain."""
    poses = tuple(
        RigidTransform(
            rotation=transform.rotation @ pose.rotation,
            translation=transform.rotation @ pose.translation + transform.translation,
        )
        for pose in chain.module_poses
    )
    return PoseChain(
        module_poses=poses,
        module_coms=transform.apply(chain.module_coms),
        joint_points=transform.apply(chain.joint_points),
    )


def point_to_polyline_distance(points: np.ndarray, polyline: np.ndarray) -> np.ndarray:
    """Distance from each query point to the nearest polyline segment."""
    q = np.atleast_2d(np.asarray(points, dtype=float))
    a = polyline[:-1]
    ab = polyline[1:] - a
    ab_sq = np.einsum("ij,ij->i", ab, ab)
    # (n_points, n_segments) parameter of each projection, clamped to the segment
    t = np.einsum("pij,ij->pi", q[:, None, :] - a[None, :, :], ab) / ab_sq
    t = np.clip(t, 0.0, 1.0)
    proj = a[None, :, :] + t[:, :, None] * ab[None, :, :]
    d = np.linalg.norm(q[:, None, :] - proj, axis=2)
    return d.min(axis=1)


def chain_to_curve_error(chain: PoseChain, curve: BackboneCurve) -> float:
    """Max distance from any module COM to the piecewise-linear curve."""
    if len(chain) == 0:
        raise InvalidParameter("empty pose chain")
    return float(point_to_polyline_distance(chain.module_coms, curve.points).max())


def curve_start_frame(curve: BackboneCurve) -> RigidTransform:
    """Tangent/normal/binormal frame at the start of a uniform-s curve.

    Used to seat module 1 so the generated chain realizes the curve in
    place: local x along the tangent, local y along the curvature normal
    (the dorsal bending direction), local z completing the right-handed
    frame.
    """
    steps = np.diff(curve.s)
    ds = float(np.mean(steps))
    if np.max(np.abs(steps - ds)) > 1e-6 * ds:
        raise InvalidParameter("start frame needs a uniformly resampled curve")
    d1, d2, _ = finite_derivatives(curve.points, ds)
    tangent = d1[0] / np.linalg.norm(d1[0])
    normal = d2[0] - np.dot(d2[0], tangent) * tangent
    norm = np.linalg.norm(normal)
    if norm == 0.0:
        raise InvalidParameter("curvature vanishes at the curve start; frame undefined")
    normal = normal / norm
    binormal = np.cross(tangent, normal)
    return RigidTransform(
        rotation=np.column_stack([tangent, normal, binormal]),
        translation=curve.points[0].copy(),
    )


def rotation_to_quaternion(rotation: np.ndarray) -> tuple[float, float, float, float]:
    """Unit quaternion (w, x, y, z) of a rotation matrix, w >= 0."""
    m = np.asarray(rotation, dtype=float)
    trace = m[0, 0] + m[1, 1] + m[2, 2]
    if trace > 0.0:
        root = np.sqrt(trace + 1.0)
        w = 0.5 * root
        k = 0.5 / root
        q = (w, (m[2, 1] - m[1, 2]) * k, (m[0, 2] - m[2, 0]) * k, (m[1, 0] - m[0, 1]) * k)
    else:
        i = int(np.argmax([m[0, 0], m[1, 1], m[2, 2]]))
        j, k2 = (i + 1) % 3, (i + 2) % 3
        root = np.sqrt(m[i, i] - m[j, j] - m[k2, k2] + 1.0)
        xyz = [0.0, 0.0, 0.0]
        xyz[i] = 0.5 * root
        fac = 0.5 / root
        xyz[j] = (m[j, i] + m[i, j]) * fac
        xyz[k2] = (m[k2, i] + m[i, k2]) * fac
        q = ((m[k2, j] - m[j, k2]) * fac, xyz[0], xyz[1], xyz[2])
    if q[0] < 0.0:
        q = tuple(-v for v in q)
    return q
