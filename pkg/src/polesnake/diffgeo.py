"""Numerical curvature, torsion, and windowed quadrature on sampled curves.

Derivatives come from second-order finite-difference stencils on a
uniform arc-length grid (one-sided at the boundaries), curvature and
torsion from the standard identities

    kappa = |r' x r''| / |r'|^3
    tau   = (r' x r'') . r''' / |r' x r''|^2

and every integral in the package is trapezoidal, matching the
piecewise-linear curve representation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .backbone import BackboneCurve
from .errors import DegenerateCurve, InvalidParameter, OutOfRange

__all__ = [
    "CurvatureProfile",
    "finite_derivatives",
    "frenet_profile",
    "profile_segment_integrals",
    "windowed_trapezoid",
]

#: below this cross-product magnitude the Frenet normal is undefined
EPS_SINGULAR = 1e-9


@dataclass(frozen=True)
class CurvatureProfile:
    """Curvature and torsion samples along arc length for one keyframe.

    ``tau_integral`` is the running trapezoidal integral of ``tau`` from
    the start of the curve, the phase by which the bending plane has
    twisted at each point.  ``tau_held`` marks profiles where torsion was
    held through a near-singular stretch instead of being computed.
    """

    s: np.ndarray
    kappa: np.ndarray
    tau: np.ndarray
    tau_integral: np.ndarray
    tau_held: bool = False

    def __post_init__(self):
        s = np.asarray(self.s, dtype=float)
        kappa = np.asarray(self.kappa, dtype=float)
        tau = np.asarray(self.tau, dtype=float)
        tau_int = np.asarray(self.tau_integral, dtype=float)
        for name, arr in (("s", s), ("kappa", kappa), ("tau", tau), ("tau_integral", tau_int)):
            object.__setattr__(self, name, arr)
        n = len(s)
        if not (len(kappa) == len(tau) == len(tau_int) == n):
            raise InvalidParameter("profile arrays must all have the same length")
        if np.any(np.diff(s) <= 0.0):
            raise InvalidParameter("arc length must be strictly increasing")
        if np.any(kappa < 0.0):
            raise InvalidParameter("curvature must be nonnegative")
        if tau_int[0] != 0.0:
            raise InvalidParameter("tau_integral must start at 0")

    @classmethod
    def from_arrays(cls, s, kappa, tau, tau_held: bool = False) -> "CurvatureProfile":
        """Build a profile from samples, integrating tau by trapezoid."""
        s = np.asarray(s, dtype=float)
        tau = np.asarray(tau, dtype=float)
        return cls(s=s, kappa=kappa, tau=tau, tau_integral=_cumtrapz(tau, s), tau_held=tau_held)


def _cumtrapz(y: np.ndarray, x: np.ndarray) -> np.ndarray:
    inc = 0.5 * (y[1:] + y[:-1]) * np.diff(x)
    return np.concatenate([[0.0], np.cumsum(inc)])


def finite_derivatives(points: np.ndarray, ds: float):
    """First, second, and third derivatives of uniformly spaced samples.

    All stencils are second-order accurate, including the one-sided ones
    used at the first and last two rows.  Needs at least 5 samples.
    """
    pts = np.asarray(points, dtype=float)
    if len(pts) < 5:
        raise InvalidParameter("finite_derivatives needs at least 5 samples")
    d1 = np.empty_like(pts)
    d2 = np.empty_like(pts)
    d3 = np.empty_like(pts)

    d1[1:-1] = (pts[2:] - pts[:-2]) / (2.0 * ds)
    d1[0] = (-1.5 * pts[0] + 2.0 * pts[1] - 0.5 * pts[2]) / ds
    d1[-1] = (1.5 * pts[-1] - 2.0 * pts[-2] + 0.5 * pts[-3]) / ds

    d2[1:-1] = (pts[2:] - 2.0 * pts[1:-1] + pts[:-2]) / ds**2
    d2[0] = (2.0 * pts[0] - 5.0 * pts[1] + 4.0 * pts[2] - pts[3]) / ds**2
    d2[-1] = (2.0 * pts[-1] - 5.0 * pts[-2] + 4.0 * pts[-3] - pts[-4]) / ds**2

    d3[2:-2] = (0.5 * pts[4:] - pts[3:-1] + pts[1:-3] - 0.5 * pts[:-4]) / ds**3
    d3[0] = (-2.5 * pts[0] + 9.0 * pts[1] - 12.0 * pts[2] + 7.0 * pts[3] - 1.5 * pts[4]) / ds**3
    d3[1] = (-1.5 * pts[0] + 5.0 * pts[1] - 6.0 * pts[2] + 3.0 * pts[3] - 0.5 * pts[4]) / ds**3
    d3[-1] = (2.5 * pts[-1] - 9.0 * pts[-2] + 12.0 * pts[-3] - 7.0 * pts[-4] + 1.5 * pts[-5]) / ds**3
    d3[-2] = (1.5 * pts[-1] - 5.0 * pts[-2] + 6.0 * pts[-3] - 3.0 * pts[-4] + 0.5 * pts[-5]) / ds**3
    return d1, d2, d3


def frenet_profile(
    curve: BackboneCurve,
    eps_singular: float = EPS_SINGULAR,
    on_degenerate: str = "raise",
) -> CurvatureProfile:
    """Curvature/torsion profile of a uniform-arc-length curve.

    The curve must be resampled to uniform ``s`` first (the stencils
    assume constant spacing).  Where ``|r' x r''|`` drops below
    ``eps_singular`` at an interior point the torsion quotient is
    undefined; the default is to raise DegenerateCurve, while
    ``on_degenerate="hold"`` carries the last well-defined torsion through
    the stretch and flags the profile.  End-point singularities are always
    held rather than raised.
    """
    if on_degenerate not in ("raise", "hold"):
        raise InvalidParameter(f"on_degenerate must be 'raise' or 'hold', got {on_degenerate!r}")
    if len(curve.points) < 5:
        raise InvalidParameter("frenet_profile needs at least 5 points")
    steps = np.diff(curve.s)
    ds = float(np.mean(steps))
    if np.max(np.abs(steps - ds)) > 1e-6 * ds:
        raise InvalidParameter("curve must be uniformly sampled in arc length; resample first")

    d1, d2, d3 = finite_derivatives(curve.points, ds)
    cross = np.cross(d1, d2)
    cross_norm = np.linalg.norm(cross, axis=1)
    speed = np.linalg.norm(d1, axis=1)
    kappa = cross_norm / speed**3

    singular = cross_norm < eps_singular
    if singular.all():
        raise DegenerateCurve("curvature vanishes everywhere; torsion is undefined")
    if on_degenerate == "raise" and singular[1:-1].any():
        idx = int(np.flatnonzero(singular[1:-1])[0]) + 1
        raise DegenerateCurve(
            f"curvature below {eps_singular:g} at interior sample {idx}; torsion is undefined"
        )

    tau = np.zeros_like(kappa)
    ok = ~singular
    tau[ok] = np.einsum("ij,ij->i", cross[ok], d3[ok]) / cross_norm[ok] ** 2
    tau_held = bool(singular.any())
    if tau_held:
        # hold torsion at the last well-defined value (first one when the
        # curve starts singular)
        valid_idx = np.flatnonzero(ok)
        sing_idx = np.flatnonzero(singular)
        pos = np.searchsorted(valid_idx, sing_idx) - 1
        tau[sing_idx] = tau[valid_idx[np.clip(pos, 0, len(valid_idx) - 1)]]

    return CurvatureProfile(
        s=curve.s.copy(),
        kappa=kappa,
        tau=tau,
        tau_integral=_cumtrapz(tau, curve.s),
        tau_held=tau_held,
    )


def windowed_trapezoid(x: np.ndarray, y: np.ndarray, a: float, b: float) -> float:
    """Trapezoidal integral of sampled ``y(x)`` over ``[a, b]``.

    The integrand is interpolated linearly at the window edges, so the
    result is the exact integral of the piecewise-linear interpolant.
    """
    ya = np.interp(a, x, y)
    yb = np.interp(b, x, y)
    inside = (x > a) & (x < b)
    xs = np.concatenate([[a], x[inside], [b]])
    ys = np.concatenate([[ya], y[inside], [yb]])
    return float(np.trapezoid(ys, xs))


def profile_segment_integrals(
    profile: CurvatureProfile, a: float, b: float, phase: float = 0.0
) -> tuple[float, float]:
    """Cosine- and sine-weighted curvature integrals over ``[a, b]``.

    Returns ``(C, S)`` where the curvature is weighted by the cosine and
    sine of the running torsion integral offset by ``phase``.  These are
    the per-joint building blocks of the gait equations.
    """
    span = profile.s[-1] - profile.s[0]
    tol = 1e-9 * span
    if a < profile.s[0] - tol or b > profile.s[-1] + tol or not a < b:
        raise OutOfRange(
            f"window [{a:g}, {b:g}] outside profile domain "
            f"[{profile.s[0]:g}, {profile.s[-1]:g}]"
        )
    angle = profile.tau_integral + phase
    c = windowed_trapezoid(profile.s, profile.kappa * np.cos(angle), a, b)
    s = windowed_trapezoid(profile.s, profile.kappa * np.sin(angle), a, b)
    return c, s
