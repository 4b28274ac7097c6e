"""Gait generation and kinematic motion estimation for pole-climbing snake robots.

The pipeline runs backbone-curve synthesis, curvature/torsion extraction,
curvature-integration joint angles, forward kinematics, a virtual-chassis
body frame, and contact-based displacement estimation, with a rolling-helix
baseline gait and a CLI for batch simulation and CSV export.
"""

__version__ = "0.1.0"

from .backbone import (
    BackboneCurve,
    GaitParams,
    fit_t_span,
    helix_point,
    resample_by_arclength,
    sample_backbone,
)
from .chassis import VirtualChassis, chassis_trajectory, virtual_chassis
from .config import DEFAULTS, RunSpec, build_run_spec, load_config
from .contact import (
    ContactSet,
    DisplacementEstimate,
    Pole,
    detect_contacts,
    estimate_displacement,
    step_dx,
)
from .diffgeo import (
    CurvatureProfile,
    frenet_profile,
    profile_segment_integrals,
    windowed_trapezoid,
)
from .errors import (
    ConfigError,
    DegenerateCloud,
    DegenerateCurve,
    DomainTooShort,
    EmptyContacts,
    InvalidParameter,
    JointLimitExceeded,
    OutOfRange,
    Penetration,
    PolesnakeError,
    StepError,
)
from .gait import (
    JointAngles,
    JointTrajectory,
    RobotConfig,
    acl_trajectory,
    angle_components,
    bellows_angles,
    keyframe_angles,
    rolling_helix_trajectory,
)
from .kinematics import (
    PoseChain,
    RigidTransform,
    chain_to_curve_error,
    curve_start_frame,
    forward_kinematics,
)
from .pipeline import SimulationResult, run_simulation, run_trajectory

__all__ = [
    "__version__",
    "BackboneCurve",
    "GaitParams",
    "fit_t_span",
    "helix_point",
    "resample_by_arclength",
    "sample_backbone",
    "CurvatureProfile",
    "frenet_profile",
    "profile_segment_integrals",
    "windowed_trapezoid",
    "RobotConfig",
    "JointAngles",
    "JointTrajectory",
    "acl_trajectory",
    "angle_components",
    "bellows_angles",
    "keyframe_angles",
    "rolling_helix_trajectory",
    "RigidTransform",
    "PoseChain",
    "forward_kinematics",
    "chain_to_curve_error",
    "curve_start_frame",
    "VirtualChassis",
    "virtual_chassis",
    "chassis_trajectory",
    "Pole",
    "ContactSet",
    "DisplacementEstimate",
    "detect_contacts",
    "step_dx",
    "estimate_displacement",
    "DEFAULTS",
    "RunSpec",
    "build_run_spec",
    "load_config",
    "SimulationResult",
    "run_simulation",
    "run_trajectory",
    "PolesnakeError",
    "InvalidParameter",
    "ConfigError",
    "DegenerateCurve",
    "OutOfRange",
    "DomainTooShort",
    "JointLimitExceeded",
    "DegenerateCloud",
    "Penetration",
    "EmptyContacts",
    "StepError",
]
