"""Run configuration: documented keys, file parsing, and RunSpec assembly.

Config files are flat ``key = value`` text; ``#`` starts a comment.
Vector values (pole origin/axis) take three numbers separated by commas
or whitespace.  Keys left unset fall back to the documented defaults; two
keys resolve automatically when unset: ``freq_time`` defaults to
``2*pi/period`` (one wave cycle per gait cycle) and ``t_max`` is solved
so the curve covers the body plus a small margin.

The default values describe a representative rig chosen by the
implementers (a 20-module chain on a 0.30 m diameter pole); they are not
measurements of any particular robot.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from .backbone import GaitParams, fit_t_span
from .contact import Pole
from .errors import ConfigError, InvalidParameter
from .gait import RobotConfig

__all__ = [
    "DEFAULTS",
    "RunSpec",
    "parse_config_text",
    "load_config",
    "apply_overrides",
    "build_run_spec",
]

#: extra curve length beyond the body span, absorbing the small arc-length
#: changes the axial modulation causes across a cycle
T_SPAN_MARGIN = 0.05

_FLOAT_KEYS = (
    "radius",
    "pitch",
    "amp_radial",
    "freq_radial",
    "amp_long",
    "freq_shape",
    "freq_time",
    "period",
    "phi0_init",
    "phi0_rate",
    "t_min",
    "t_max",
    "module_length",
    "joint_radius",
    "joint_limit",
    "pole_radius",
)
_INT_KEYS = ("n_modules", "n_steps", "cycles", "n_curve_samples", "n_profile_samples")
_BOOL_KEYS = ("include_roll",)
_VEC_KEYS = ("pole_origin", "pole_axis")
_STR_KEYS = ("gait", "first_joint_axis")

DEFAULTS: dict = {
    "gait": "acl",
    # backbone / gait parameters
    "radius": 0.2,
    "pitch": 0.25,
    "amp_radial": 0.0,
    "freq_radial": 1.0,
    "amp_long": 0.02,
    "freq_shape": 1.5,
    "freq_time": None,  # resolved to 2*pi/period
    "period": 22.0,
    "phi0_init": 0.0,
    "phi0_rate": 0.0,
    "t_min": 0.0,
    "t_max": None,  # resolved by arc-length fit
    # robot
    "n_modules": 20,
    "module_length": 0.0889,
    "joint_radius": 0.0381,
    "first_joint_axis": "dorsal",
    "joint_limit": math.pi / 2,
    # pole
    "pole_radius": 0.1524,
    "pole_origin": (0.0, 0.0, 0.0),
    "pole_axis": (0.0, 0.0, 1.0),
    # run
    "n_steps": 220,
    "cycles": 1,
    "include_roll": True,
    "n_curve_samples": 4001,
    "n_profile_samples": 1001,
}


def _coerce(key: str, raw: str):
    value = raw.strip()
    try:
        if key in _FLOAT_KEYS:
            return float(value)
        if key in _INT_KEYS:
            return int(value)
        if key in _BOOL_KEYS:
            lowered = value.lower()
            if lowered in ("true", "1", "yes", "on"):
                return True
            if lowered in ("false", "0", "no", "off"):
                return False
            raise ValueError(value)
        if key in _VEC_KEYS:
            parts = value.replace(",", " ").split()
            if len(parts) != 3:
                raise ValueError(value)
            return tuple(float(p) for p in parts)
        if key in _STR_KEYS:
            return value
    except ValueError:
        raise ConfigError(f"invalid value for {key}: {raw!r}") from None
    raise ConfigError(f"unknown configuration key: {key}")


def parse_config_text(text: str) -> dict:
    """Parse flat key-value configuration text into typed values."""
    out: dict = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, raw = stripped.split("=", 1)
        key = key.strip()
        out[key] = _coerce(key, raw)
    return out


def load_config(path: str | Path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    return parse_config_text(text)


def apply_overrides(mapping: dict, overrides: list[str]) -> dict:
    """Apply ``key=value`` override strings on top of a mapping."""
    merged = dict(mapping)
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"override must look like key=value, got {item!r}")
        key, raw = item.split("=", 1)
        merged[key.strip()] = _coerce(key.strip(), raw)
    return merged


@dataclass(frozen=True)
class RunSpec:
    """Fully resolved inputs of one run; everything downstream is a pure
    function of this object, so identical specs give identical outputs."""

    gait: str
    params: GaitParams
    robot: RobotConfig
    pole: Pole
    n_steps: int
    cycles: int
    include_roll: bool
    n_curve_samples: int
    n_profile_samples: int

    def resolved_mapping(self) -> dict:
        """Flat key-value view with every resolved value, for manifests."""
        p, r, pole = self.params, self.robot, self.pole
        return {
            "gait": self.gait,
            "radius": p.radius,
            "pitch": p.pitch,
            "amp_radial": p.amp_radial,
            "freq_radial": p.freq_radial,
            "amp_long": p.amp_long,
            "freq_shape": p.freq_shape,
            "freq_time": p.freq_time,
            "period": p.period,
            "phi0_init": p.phi0_init,
            "phi0_rate": p.phi0_rate,
            "t_min": p.t_min,
            "t_max": p.t_max,
            "n_modules": r.n_modules,
            "module_length": r.module_length,
            "joint_radius": r.joint_radius,
            "first_joint_axis": r.first_joint_axis,
            "joint_limit": r.joint_limit,
            "pole_radius": pole.radius,
            "pole_origin": list(pole.origin),
            "pole_axis": list(pole.axis),
            "n_steps": self.n_steps,
            "cycles": self.cycles,
            "include_roll": self.include_roll,
            "n_curve_samples": self.n_curve_samples,
            "n_profile_samples": self.n_profile_samples,
        }


def build_run_spec(mapping: dict | None = None) -> RunSpec:
    """Assemble a validated RunSpec from a flat mapping over the defaults."""
    merged = dict(DEFAULTS)
    for key, value in (mapping or {}).items():
        if key not in DEFAULTS:
            raise ConfigError(f"unknown configuration key: {key}")
        merged[key] = value

    gait = merged["gait"]
    if gait not in ("acl", "rolling"):
        raise ConfigError(f"gait must be 'acl' or 'rolling', got {gait!r}")

    try:
        robot = RobotConfig(
            n_modules=merged["n_modules"],
            module_length=merged["module_length"],
            joint_radius=merged["joint_radius"],
            first_joint_axis=merged["first_joint_axis"],
            joint_limit=merged["joint_limit"],
        )
        pole = Pole(
            origin=merged["pole_origin"],
            axis=merged["pole_axis"],
            radius=merged["pole_radius"],
        )
        period = merged["period"]
        if not period > 0.0:
            raise InvalidParameter(f"period must be positive, got {period}")
        freq_time = merged["freq_time"]
        if freq_time is None:
            freq_time = 2.0 * math.pi / period
        t_max = merged["t_max"]
        params = GaitParams(
            radius=merged["radius"],
            pitch=merged["pitch"],
            amp_radial=merged["amp_radial"],
            freq_radial=merged["freq_radial"],
            amp_long=merged["amp_long"],
            freq_shape=merged["freq_shape"],
            freq_time=freq_time,
            period=period,
            t_min=merged["t_min"],
            t_max=t_max if t_max is not None else merged["t_min"] + 1.0,
            phi0_init=merged["phi0_init"],
            phi0_rate=merged["phi0_rate"],
        )
        if t_max is None:
            target = robot.profile_span * (1.0 + T_SPAN_MARGIN)
            params = fit_t_span(params, target, n_samples=merged["n_curve_samples"])
    except InvalidParameter as exc:
        raise ConfigError(str(exc)) from exc

    for key, minimum in (
        ("n_steps", 1),
        ("cycles", 1),
        ("n_curve_samples", 4),
        ("n_profile_samples", 5),
    ):
        if merged[key] < minimum:
            raise ConfigError(f"{key} must be >= {minimum}, got {merged[key]}")

    return RunSpec(
        gait=gait,
        params=params,
        robot=robot,
        pole=pole,
        n_steps=merged["n_steps"],
        cycles=merged["cycles"],
        include_roll=merged["include_roll"],
        n_curve_samples=merged["n_curve_samples"],
        n_profile_samples=merged["n_profile_samples"],
    )
