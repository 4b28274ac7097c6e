"""Virtual-chassis body frame from module center-of-mass clouds.

The body frame origin is the mean of the module COMs; its axes are the
right singular vectors of the zero-mean position matrix, ordered by
singular value.  Singular vectors carry a sign ambiguity, so each column
is flipped to agree with the previous frame's column (temporal
continuity) and the third axis is recomputed as a cross product to keep
the frame right-handed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateCloud, InvalidParameter
from .kinematics import PoseChain

__all__ = ["VirtualChassis", "virtual_chassis", "chassis_trajectory"]

#: relative singular-value threshold below which the cloud counts as collinear
RANK_TOL = 1e-9


@dataclass(frozen=True)
class VirtualChassis:
    """Body frame for one time step.

    ``axes`` columns are the principal directions (descending singular
    value); ``degenerate`` marks frames where the cloud was collinear and
    the second axis is an arbitrary perpendicular fallback.
    """

    origin: np.ndarray
    axes: np.ndarray
    singular_values: np.ndarray
    degenerate: bool = False

    def __post_init__(self):
        origin = np.asarray(self.origin, dtype=float)
        axes = np.asarray(self.axes, dtype=float)
        sv = np.asarray(self.singular_values, dtype=float)
        object.__setattr__(self, "origin", origin)
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "singular_values", sv)
        if axes.shape != (3, 3) or origin.shape != (3,) or sv.shape != (3,):
            raise InvalidParameter("chassis needs a 3-vector origin, 3x3 axes, 3 singular values")


def _perpendicular_unit(v: np.ndarray) -> np.ndarray:
    basis = np.eye(3)
    pick = int(np.argmin(np.abs(basis @ v)))
    u = basis[pick] - np.dot(basis[pick], v) * v
    return u / np.linalg.norm(u)


def virtual_chassis(
    coms: np.ndarray, prev: VirtualChassis | None = None
) -> VirtualChassis:
    """Body frame of one configuration, sign-chained to ``prev``.

    Without a previous frame, the first axis is oriented toward world +z
    (the climb direction) and the second toward world +y.  A collinear
    cloud yields a flagged frame whose second axis is a deterministic
    perpendicular fallback.
    """
    pts = np.asarray(coms, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 3:
        raise InvalidParameter(f"coms must be (n, 3), got {pts.shape}")
    if len(pts) < 3:
        raise InvalidParameter(f"need at least 3 points, got {len(pts)}")
    origin = pts.mean(axis=0)
    centered = pts - origin
    _, sv, vt = np.linalg.svd(centered, full_matrices=True)
    axes = vt.T.copy()
    if len(sv) < 3:
        sv = np.concatenate([sv, np.zeros(3 - len(sv))])

    degenerate = sv[0] == 0.0 or sv[1] < RANK_TOL * sv[0]

    if prev is not None:
        ref1, ref2 = prev.axes[:, 0], prev.axes[:, 1]
    else:
        ref1 = np.array([0.0, 0.0, 1.0])
        ref2 = np.array([0.0, 1.0, 0.0])
    if np.dot(axes[:, 0], ref1) < 0.0:
        axes[:, 0] = -axes[:, 0]
    if degenerate:
        axes[:, 1] = _perpendicular_unit(axes[:, 0])
    if np.dot(axes[:, 1], ref2) < 0.0:
        axes[:, 1] = -axes[:, 1]
    axes[:, 2] = np.cross(axes[:, 0], axes[:, 1])

    return VirtualChassis(
        origin=origin, axes=axes, singular_values=sv, degenerate=degenerate
    )


def chassis_trajectory(chains: Sequence[PoseChain]) -> list[VirtualChassis]:
    """Per-frame body frames with sign continuity along the sequence.

    Raises DegenerateCloud, tagged with the frame index, if any frame's
    COM cloud is collinear; sign chaining needs well-defined axes.
    """
    if len(chains) == 0:
        raise InvalidParameter("need at least one pose chain")
    frames: list[VirtualChassis] = []
    prev: VirtualChassis | None = None
    for i, chain in enumerate(chains):
        frame = virtual_chassis(chain.module_coms, prev)
        if frame.degenerate:
            raise DegenerateCloud(f"collinear module cloud at frame {i}", frame=i)
        frames.append(frame)
        prev = frame
    return frames
