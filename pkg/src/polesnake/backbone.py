"""Pitch-varying-helix backbone curves.

The climbing gait is defined by a family of helices wrapped around the
pole whose axial advance is modulated by a compounded sinusoid.  Each
keyframe of the gait samples one member of the family; downstream modules
work on the sampled polyline and its chordal arc length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DegenerateCurve, InvalidParameter

__all__ = [
    "GaitParams",
    "BackboneCurve",
    "helix_point",
    "sample_backbone",
    "resample_by_arclength",
    "fit_t_span",
]


@dataclass(frozen=True)
class GaitParams:
    """Scalar parameters of the pitch-varying helix family and its schedule.

    Lengths are in meters, angles in radians, times in seconds.  The curve
    parameter ``t`` (radians around the pole axis) and the keyframe time
    ``h`` (seconds into the gait cycle) are deliberately separate: ``t``
    runs along the body at a frozen instant, ``h`` advances the shape.

    Attributes:
        radius: wrap radius of the backbone centerline around the pole axis.
        pitch: base axial advance per radian of wrap.
        amp_radial: amplitude of the radial modulation (zero in the
            simplified, always-in-contact model).
        freq_radial: spatial frequency of the radial modulation.
        amp_long: amplitude of the longitudinal (axial) modulation that
            produces the expansion/contraction wave.
        freq_shape: spatial frequency of the axial modulation along ``t``.
        freq_time: temporal frequency coupling the wave to ``h``; one full
            cycle needs ``freq_time * period == 2*pi * k`` for integer k.
        period: gait period in seconds.
        t_min, t_max: curve-parameter window occupied by the robot body.
        phi0_init, phi0_rate: affine phase-offset schedule
            ``phi0(h) = phi0_init + phi0_rate * h`` used by the gait
            equations; a rate of ``2*pi/period`` rolls the body once per
            cycle.
    """

    radius: float
    pitch: float
    amp_radial: float = 0.0
    freq_radial: float = 1.0
    amp_long: float = 0.0
    freq_shape: float = 1.0
    freq_time: float = 0.0
    period: float = 22.0
    t_min: float = 0.0
    t_max: float = 2.0 * math.pi
    phi0_init: float = 0.0
    phi0_rate: float = 0.0

    def __post_init__(self):
        if not self.radius > 0.0:
            raise InvalidParameter(f"radius must be positive, got {self.radius}")
        if not self.period > 0.0:
            raise InvalidParameter(f"period must be positive, got {self.period}")
        if not self.t_max > self.t_min:
            raise InvalidParameter(
                f"t_max ({self.t_max}) must exceed t_min ({self.t_min})"
            )
        if self.amp_radial < 0.0:
            raise InvalidParameter(f"amp_radial must be >= 0, got {self.amp_radial}")
        if self.amp_long < 0.0:
            raise InvalidParameter(f"amp_long must be >= 0, got {self.amp_long}")

    def phase_offset(self, h: float) -> float:
        """Phase offset phi0 at keyframe time ``h``."""
        return self.phi0_init + self.phi0_rate * h


@dataclass(frozen=True)
class BackboneCurve:
    """Ordered 3D samples of one keyframe curve with cumulative arc length.

    ``s`` is the chordal arc length (``s[0] == 0``); ``keyframe_time`` is
    the gait time ``h`` the curve was sampled at.
    """

    points: np.ndarray
    s: np.ndarray
    keyframe_time: float = 0.0

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        s = np.asarray(self.s, dtype=float)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "s", s)
        if pts.ndim != 2 or pts.shape[1] != 3:
            raise InvalidParameter(f"points must be (n, 3), got {pts.shape}")
        if len(pts) < 4:
            raise InvalidParameter(f"need at least 4 points, got {len(pts)}")
        if s.shape != (len(pts),):
            raise InvalidParameter("s must have one entry per point")
        if s[0] != 0.0:
            raise InvalidParameter("arc length must start at 0")
        if np.any(np.diff(s) <= 0.0):
            raise InvalidParameter("arc length must be strictly increasing")
        if np.any(np.linalg.norm(np.diff(pts, axis=0), axis=1) == 0.0):
            raise InvalidParameter("consecutive points must be distinct")

    @property
    def length(self) -> float:
        return float(self.s[-1])


def helix_point(params: GaitParams, t, h: float = 0.0, simplified: bool = True):
    """Evaluate the backbone helix at curve parameter ``t`` and time ``h``.

    With ``simplified=True`` the radial modulation is dropped (amp_radial
    treated as zero), the form used throughout the gait pipeline.  Accepts
    scalar or array ``t``; returns shape (3,) or (n, 3).
    """
    t = np.asarray(t, dtype=float)
    if simplified:
        rho = params.radius
    else:
        rho = params.radius + params.amp_radial * np.cos(
            params.freq_radial * t + params.freq_time * h
        )
    x = rho * np.cos(t)
    y = rho * np.sin(t)
    z = params.pitch * t + params.amp_long * np.sin(
        params.freq_shape * t + params.freq_time * h
    )
    return np.stack([x, y, z], axis=-1)


def _chordal_arclength(points: np.ndarray) -> np.ndarray:
    seg = np.linalg.norm(np.diff(points, axis=0), axis=1)
    return np.concatenate([[0.0], np.cumsum(seg)])


def sample_backbone(
    params: GaitParams, h: float = 0.0, n_samples: int = 4001, simplified: bool = True
) -> BackboneCurve:
    """Sample the keyframe curve at ``n_samples`` uniform ``t`` values.

    Arc length is the cumulative chord length of the sampled polyline;
    its error against the true arc length is second order in the sample
    spacing, consistent with the rest of the numerical pipeline.
    """
    if n_samples < 4:
        raise InvalidParameter(f"n_samples must be >= 4, got {n_samples}")
    t = np.linspace(params.t_min, params.t_max, n_samples)
    points = helix_point(params, t, h, simplified)
    return BackboneCurve(points=points, s=_chordal_arclength(points), keyframe_time=h)


def resample_by_arclength(curve: BackboneCurve, n_out: int) -> BackboneCurve:
    """Resample a curve at uniform arc-length spacing.

    Output points lie exactly on the piecewise-linear interpolant of the
    input; the output ``s`` grid is ``linspace(0, length, n_out)``, which
    measures position along that interpolant.
    """
    if n_out < 4:
        raise InvalidParameter(f"n_out must be >= 4, got {n_out}")
    total = curve.length
    if total <= 0.0:
        raise DegenerateCurve("cannot resample a zero-length curve")
    s_out = np.linspace(0.0, total, n_out)
    points = np.column_stack(
        [np.interp(s_out, curve.s, curve.points[:, k]) for k in range(3)]
    )
    return BackboneCurve(points=points, s=s_out, keyframe_time=curve.keyframe_time)


def fit_t_span(
    params: GaitParams,
    target_length: float,
    h: float = 0.0,
    n_samples: int = 4001,
    tol: float = 1e-12,
) -> GaitParams:
    """Solve for ``t_max`` so the curve's arc length matches ``target_length``.

    Bisection from ``t_min``; arc length is monotone in ``t_max``, and the
    planar speed of the helix is at least ``radius``, which bounds the
    bracket.  Returns a copy of ``params`` with ``t_max`` replaced.
    """
    if target_length <= 0.0:
        raise InvalidParameter("target_length must be positive")

    def length_at(t_max: float) -> float:
        t = np.linspace(params.t_min, t_max, n_samples)
        pts = helix_point(params, t, h, simplified=True)
        return float(_chordal_arclength(pts)[-1])

    lo = params.t_min
    hi = params.t_min + target_length / params.radius + 1.0
    if length_at(hi) < target_length:
        raise InvalidParameter("bisection bracket failed to cover target length")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if length_at(mid) < target_length:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol * max(1.0, hi):
            break
    return replace(params, t_max=0.5 * (lo + hi))
