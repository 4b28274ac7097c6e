"""Pole contact identification and displacement estimation.

Contact joints are found under the non-slip model's assumptions: the
robot touches the pole only near joints, and every two-link segment
(a sliding window of three consecutive joints) contributes the joint
closest to the pole axis.  Displacement per step is the negated change of
the contact set's mean axial coordinate; contacts regressing along the
axis mean the body advanced.  The per-cycle total adds one roll term of
2*pi*joint_radius.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import EmptyContacts, InvalidParameter, Penetration
from .kinematics import PoseChain

__all__ = [
    "Pole",
    "ContactSet",
    "DisplacementEstimate",
    "detect_contacts",
    "step_dx",
    "estimate_displacement",
]


@dataclass(frozen=True)
class Pole:
    """Cylinder the robot climbs: axis origin, unit direction, radius."""

    origin: np.ndarray
    axis: np.ndarray
    radius: float

    def __post_init__(self):
        origin = np.asarray(self.origin, dtype=float)
        axis = np.asarray(self.axis, dtype=float)
        if origin.shape != (3,) or axis.shape != (3,):
            raise InvalidParameter("pole origin and axis must be 3-vectors")
        norm = np.linalg.norm(axis)
        if norm == 0.0:
            raise InvalidParameter("pole axis must be nonzero")
        object.__setattr__(self, "origin", origin)
        object.__setattr__(self, "axis", axis / norm)
        if not self.radius > 0.0:
            raise InvalidParameter(f"pole radius must be positive, got {self.radius}")


@dataclass(frozen=True)
class ContactSet:
    """Joints in contact with the pole at one step.

    ``axial_coords`` are the contact points' components along the pole
    axis, measured from the pole origin.  ``joint_indices`` are 1-based.
    """

    step: int
    joint_indices: tuple[int, ...]
    points: np.ndarray
    axial_coords: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        ax = np.asarray(self.axial_coords, dtype=float)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "axial_coords", ax)
        if len(self.joint_indices) != len(ax) or len(pts) != len(ax):
            raise InvalidParameter("contact arrays must have matching lengths")

    def __len__(self) -> int:
        return len(self.joint_indices)


def detect_contacts(
    chain: PoseChain,
    pole: Pole,
    step: int = 0,
    penetration_fraction: float = 0.05,
) -> ContactSet:
    """Identify the contact joints of one configuration.

    Every window of three consecutive joints contributes its closest
    joint (ties go to the lower index); duplicates collapse.  Joints may
    dip below the pole surface by at most ``penetration_fraction`` of the
    radius, the slack a purely kinematic fit needs; beyond that the
    configuration is rejected.  Contact points are the joints projected
    radially onto the pole surface.
    """
    joints = chain.joint_points
    n = len(joints)
    if n == 0:
        raise InvalidParameter("chain has no joints")
    rel = joints - pole.origin
    axial = rel @ pole.axis
    radial_vec = rel - axial[:, None] * pole.axis
    dist = np.linalg.norm(radial_vec, axis=1)

    min_dist = pole.radius * (1.0 - penetration_fraction)
    inside = np.flatnonzero(dist < min_dist)
    if len(inside):
        i = int(inside[0])
        raise Penetration(i + 1, float(dist[i]), min_dist)

    if n < 3:
        picks = [int(np.argmin(dist))]
    else:
        picks = [w + int(np.argmin(dist[w : w + 3])) for w in range(n - 2)]
    selected = sorted(set(picks))

    unit_radial = radial_vec[selected] / dist[selected, None]
    points = (
        pole.origin
        + axial[selected, None] * pole.axis
        + pole.radius * unit_radial
    )
    return ContactSet(
        step=step,
        joint_indices=tuple(i + 1 for i in selected),
        points=points,
        axial_coords=axial[selected].copy(),
    )


def step_dx(prev: ContactSet, curr: ContactSet) -> float:
    """Estimated axial advance between two consecutive contact sets.

    Under non-slip contact the gripping points stay put in the world, so
    their regression along the axis in the body's frame of reference is
    the body's advance; hence the sign flip on the mean difference.
    """
    if len(prev) == 0 or len(curr) == 0:
        raise EmptyContacts()
    return -(float(np.mean(curr.axial_coords)) - float(np.mean(prev.axial_coords)))


@dataclass(frozen=True)
class DisplacementEstimate:
    """Per-step advances and the per-cycle total with the roll term.

    ``total == sum(per_step_dx) + roll_term * cycles`` holds exactly;
    ``roll_term`` is ``2*pi*joint_radius`` (0 when the roll term is
    disabled).  ``flagged_steps`` lists steps whose contact set shares
    fewer than half its joints with the previous step, where the mean
    difference is a weaker estimate.
    """

    per_step_dx: tuple[float, ...]
    total: float
    roll_term: float
    cycles: int
    flagged_steps: tuple[int, ...] = ()


def estimate_displacement(
    contact_sets: Sequence[ContactSet],
    joint_radius: float,
    cycles: int = 1,
    include_roll: bool = True,
) -> DisplacementEstimate:
    """Accumulate per-step advances over a run and add the roll term.

    The roll term enters once per cycle.  EmptyContacts errors from the
    per-step fold are re-raised with the step index attached.
    """
    if len(contact_sets) < 2:
        raise InvalidParameter("need at least two contact sets")
    if cycles < 1:
        raise InvalidParameter(f"cycles must be >= 1, got {cycles}")
    per_step = []
    flagged = []
    for i in range(len(contact_sets) - 1):
        prev, curr = contact_sets[i], contact_sets[i + 1]
        try:
            per_step.append(step_dx(prev, curr))
        except EmptyContacts as exc:
            raise EmptyContacts(f"empty contact set at step {i + 1}", step=i + 1) from exc
        shared = len(set(prev.joint_indices) & set(curr.joint_indices))
        if shared < max(len(prev), len(curr)) / 2.0:
            flagged.append(i + 1)
    roll_term = 2.0 * np.pi * joint_radius if include_roll else 0.0
    total = sum(per_step) + roll_term * cycles
    return DisplacementEstimate(
        per_step_dx=tuple(per_step),
        total=total,
        roll_term=roll_term,
        cycles=cycles,
        flagged_steps=tuple(flagged),
    )
