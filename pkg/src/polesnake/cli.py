"""Command-line front end: generate, simulate, and compare runs.

Exit codes: 0 on success, 2 for configuration problems, 3 for pipeline
failures.  Output files contain radians and meters only; log lines aimed
at humans may use degrees and centimeters, always suffixed.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
from pathlib import Path

import numpy as np

from .config import apply_overrides, build_run_spec, load_config
from .errors import ConfigError, InvalidParameter, PolesnakeError, StepError
from .export import (
    fmt,
    write_chassis_csv,
    write_contacts_csv,
    write_displacement_report,
    write_manifest,
    write_poses_csv,
    write_text_atomic,
    write_trajectory_csv,
)
from .pipeline import run_simulation, run_trajectory

log = logging.getLogger("polesnake")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PIPELINE = 3


def _add_common_flags(parser: argparse.ArgumentParser, with_gait: bool = True) -> None:
    parser.add_argument("--config", type=Path, help="flat key-value configuration file")
    if with_gait:
        parser.add_argument("--gait", choices=("acl", "rolling"), help="gait to generate")
    parser.add_argument("--steps", type=int, help="time steps per gait cycle")
    parser.add_argument("--cycles", type=int, help="number of gait cycles")
    parser.add_argument("--out", type=Path, default=Path("out"), help="output directory")
    parser.add_argument(
        "--override",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override one configuration key (repeatable)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polesnake",
        description="Pole-climbing gait generation and motion estimation for snake robots.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a joint-command trajectory")
    _add_common_flags(gen)

    sim = sub.add_parser("simulate", help="run the full kinematic pipeline")
    _add_common_flags(sim)

    cmp_ = sub.add_parser("compare", help="compare the two gaits across trials")
    _add_common_flags(cmp_, with_gait=False)
    cmp_.add_argument(
        "--trial",
        action="append",
        default=[],
        metavar="KEY=VALUE[,KEY=VALUE...]",
        help="per-trial overrides; repeat for multiple trials",
    )
    return parser


def _resolve_mapping(args: argparse.Namespace) -> dict:
    mapping = load_config(args.config) if args.config else {}
    mapping = apply_overrides(mapping, args.override)
    if getattr(args, "gait", None):
        mapping["gait"] = args.gait
    if args.steps is not None:
        mapping["n_steps"] = args.steps
    if args.cycles is not None:
        mapping["cycles"] = args.cycles
    return mapping


def _notice_rolling(spec) -> None:
    if spec.gait == "rolling" and spec.params.amp_long > 0.0:
        log.info(
            "rolling gait ignores amp_long=%s (constant-helix baseline)",
            fmt(spec.params.amp_long),
        )


def cmd_generate(args: argparse.Namespace) -> int:
    spec = build_run_spec(_resolve_mapping(args))
    _notice_rolling(spec)
    trajectory = run_trajectory(spec)
    peak = max(float(np.max(np.abs(a.angles))) for _, a in trajectory.steps)
    log.info("peak joint angle %.1f deg over %d steps", math.degrees(peak), len(trajectory))
    out = args.out
    files = [write_trajectory_csv(out / "trajectory.csv", trajectory)]
    write_manifest(out / "manifest.json", "generate", spec.resolved_mapping(), files)
    log.info("wrote %s", out / "trajectory.csv")
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    spec = build_run_spec(_resolve_mapping(args))
    _notice_rolling(spec)
    result = run_simulation(spec)
    out = args.out
    files = [
        write_trajectory_csv(out / "trajectory.csv", result.trajectory),
        write_poses_csv(out / "poses.csv", result.chains),
        write_chassis_csv(out / "chassis.csv", result.chassis),
        write_contacts_csv(out / "contacts.csv", result.contacts),
        write_displacement_report(out / "displacement.txt", result.displacement, spec.n_steps),
    ]
    write_manifest(out / "manifest.json", "simulate", spec.resolved_mapping(), files)
    log.info(
        "estimated displacement %.2f cm over %d cycle(s)",
        100.0 * result.displacement.total,
        spec.cycles,
    )
    return EXIT_OK


def _parse_trials(trial_args: list[str]) -> list[list[str]]:
    if not trial_args:
        return [[]]
    return [[item for item in trial.split(",") if item] for trial in trial_args]


def cmd_compare(args: argparse.Namespace) -> int:
    base_mapping = _resolve_mapping(args)
    base_spec = build_run_spec(base_mapping)
    trials = _parse_trials(args.trial)
    acl_totals = []
    rolling_totals = []
    for index, trial_overrides in enumerate(trials, start=1):
        try:
            mapping = apply_overrides(base_mapping, trial_overrides)
            for gait, bucket in (("acl", acl_totals), ("rolling", rolling_totals)):
                spec = build_run_spec({**mapping, "gait": gait})
                bucket.append(run_simulation(spec).displacement.total)
        except (ConfigError, InvalidParameter) as exc:
            raise ConfigError(f"trial {index}: {exc}") from exc
        except PolesnakeError as exc:
            raise StepError(index, str(exc), label="trial") from exc
        log.info(
            "trial %d: acl %.2f cm, rolling %.2f cm",
            index,
            100.0 * acl_totals[-1],
            100.0 * rolling_totals[-1],
        )

    acl_mean, acl_std = float(np.mean(acl_totals)), float(np.std(acl_totals))
    rol_mean, rol_std = float(np.mean(rolling_totals)), float(np.std(rolling_totals))

    out = args.out
    rows = [["trial", "acl_m", "rolling_m"]]
    for i, (a, r) in enumerate(zip(acl_totals, rolling_totals), start=1):
        rows.append([str(i), fmt(a), fmt(r)])
    rows.append(["mean", fmt(acl_mean), fmt(rol_mean)])
    rows.append(["std_dev", fmt(acl_std), fmt(rol_std)])
    csv_path = write_text_atomic(
        out / "comparison.csv", "\n".join(",".join(r) for r in rows) + "\n"
    )

    table = [
        f"displacement comparison over {base_spec.cycles} cycle(s), {len(trials)} trial(s)",
        "",
        f"{'':<18}{'rolling helix':<18}{'acl':<18}",
        f"{'mean (cm)':<18}{100.0 * rol_mean:<18.2f}{100.0 * acl_mean:<18.2f}",
        f"{'std dev (cm)':<18}{100.0 * rol_std:<18.2f}{100.0 * acl_std:<18.2f}",
    ]
    txt_path = write_text_atomic(out / "comparison.txt", "\n".join(table) + "\n")

    manifest_inputs = dict(base_spec.resolved_mapping())
    manifest_inputs["trials"] = [",".join(t) for t in trials]
    write_manifest(out / "manifest.json", "compare", manifest_inputs, [csv_path, txt_path])
    print("\n".join(table))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(levelname)s %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"generate": cmd_generate, "simulate": cmd_simulate, "compare": cmd_compare}
    try:
        return handlers[args.command](args)
    except (ConfigError, InvalidParameter) as exc:
        log.error("configuration error: %s", exc)
        return EXIT_CONFIG
    except PolesnakeError as exc:
        log.error("pipeline error: %s", exc)
        return EXIT_PIPELINE


if __name__ == "__main__":
    raise SystemExit(main())
