"""``arthrosim`` command-line interface.

Every sweep subcommand writes one CSV, to stdout or to ``--out DIR``.
Exit codes: 0 success, 2 validation error, 3 numeric failure, 4 comparison
failure.  ``ARTHROSIM_CONFIG`` names the default config file.
"""

from __future__ import annotations

import argparse
import dataclasses
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import actuation, humeroradial, iom, mcl, tfcc
from .calibration import REGISTRY, calibrate, format_report
from .compare import ExperimentRecord, compare
from .config import ModelConfig, default_config, dumps_config, load_config, replace_param
from .errors import ConfigError, GeometryError, NumericError
from .figures import FIGURES, run_figure, with_provenance
from .report import report
from .sweep import SweepResult, boundary_unit, closed_grid, parallel_map
from .units import deg_to_rad, rad_to_deg

EXIT_OK, EXIT_VALIDATION, EXIT_NUMERIC, EXIT_COMPARE = 0, 2, 3, 4
ENV_CONFIG = "ARTHROSIM_CONFIG"

FORCE_FIELDS = {
    "brachialis.f_t1": "elbow_actuation.brachialis.f_t1",
    "brachialis.f_text": "elbow_actuation.brachialis.f_text",
    "biceps.f_t1": "elbow_actuation.biceps.f_t1",
    "biceps.f_text": "elbow_actuation.biceps.f_text",
    "pronation.f_t2": "pronation.f_t2",
    "supination.f_t3": "supination.f_t3",
    "supination.f_t4": "supination.f_t4",
}


class CompareFailure(Exception):
    pass


# ---------------------------------------------------------------- helpers

def _config(args) -> ModelConfig:
    path = args.config or os.environ.get(ENV_CONFIG)
    return load_config(path) if path else default_config()


def _angle(config: ModelConfig, value: float) -> float:
    """CLI angle argument in the config's angle unit, to radians."""
    return deg_to_rad(repr(value)) if config.angle_io_unit == "degrees" else float(value)


def _range_deg(config: ModelConfig, pair, default_rad):
    """A sweep range for degree-laid grids, honouring the angle unit."""
    if pair is None:
        lo, hi = default_rad
    else:
        lo, hi = (_angle(config, v) for v in pair)
    return float(rad_to_deg(lo)), float(rad_to_deg(hi))


def _emit(result: SweepResult, args, config: ModelConfig, name: str) -> None:
    text = result.to_csv(angle_unit=config.angle_io_unit)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{name}.csv").write_bytes(text.encode("utf-8"))
    else:
        sys.stdout.write(text)


def _key_value(text: str) -> tuple[str, float]:
    key, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {text!r}")
    try:
        return key.strip(), float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{key}: {value!r} is not a number") from None


# ---------------------------------------------------------------- commands

def cmd_hr_dislocation(args, config):
    geom = config.humeroradial
    if args.theta_s is not None:
        geom = _build_replace("humeroradial", geom, theta_s=_angle(config, args.theta_s))
    prof = humeroradial.dislocation_profile(geom, args.n)
    summary = (f"delta_lp={prof.delta_lp * 1e3:.9g} mm f_peak={prof.f_peak:.9g} N "
               f"theta_s={math.degrees(geom.theta_s):.9g} deg")
    result = SweepResult("delta_ls", prof.delta_ls, {"f_e": prof.f_e, "theta_s1": prof.theta_s1},
                         {"delta_ls": "m", "f_e": "N", "theta_s1": "rad"},
                         provenance={"module": "humeroradial"}, notes=(summary,))
    _emit(with_provenance(result, config), args, config, "hr_dislocation")
    print(summary, file=sys.stderr)


def cmd_tfcc(args, config):
    rng = _range_deg(config, args.range, config.joint.theta22_model_range)
    result = tfcc.tfcc_curve(config.tfcc, rng, args.n, jobs=args.jobs)
    _emit(with_provenance(result, config), args, config, "tfcc")


def cmd_iom_strain(args, config):
    rng = _range_deg(config, args.range, (math.radians(-8.0), math.radians(8.0)))
    result = iom.bundle_strain_curve(config.linkage, config.bundles, rng, args.n,
                                     reference=args.reference, jobs=args.jobs)
    _emit(with_provenance(result, config), args, config, "iom_strain")


def cmd_iom_equilibrium(args, config):
    lever = args.lever_mm * 1e-3 if args.lever_mm is not None else config.linkage.l3
    forces = closed_grid(0.0, args.force_max, args.n)
    series, units = {}, {"force": "N"}
    sides = ("left", "right") if args.side == "both" else (args.side,)
    for side in sides:
        solve = lambda f, side=side: iom.lateral_equilibrium(config.linkage, config.bundles, f,
                                                              lever, side) - config.linkage.theta_d_rest
        series[f"deflection_{side}"] = np.array(parallel_map(solve, list(forces), args.jobs))
        units[f"deflection_{side}"] = "rad"
    result = SweepResult("force", forces, series, units,
                         provenance={"module": "iom", "lever_mm": f"{lever * 1e3:.9g}"})
    _emit(with_provenance(result, config), args, config, "iom_equilibrium")


def cmd_mcl_strain(args, config):
    geom = config.mcl
    if args.mode is not None:
        geom = _build_replace("mcl", geom, strain_mode=args.mode)
    rng = _range_deg(config, args.range, config.joint.theta21_range)
    result = mcl.mcl_curve(geom, rng, args.n, jobs=args.jobs)
    _emit(with_provenance(result, config), args, config, "mcl_strain")


def cmd_torque(args, config):
    for key, value in args.force_override or ():
        if key not in FORCE_FIELDS:
            raise ConfigError(f"not an overridable force; choose from {', '.join(FORCE_FIELDS)}", key)
        config = replace_param(config, FORCE_FIELDS[key], value)
    theta21 = _angle(config, args.theta21)
    result = actuation.torque_envelope(config, args.joint, args.n, theta21_fixed=theta21, jobs=args.jobs)
    _emit(with_provenance(result, config), args, config, f"torque_{args.joint}")


def cmd_figure(args, config):
    ids = FIGURES if args.figure_id == "all" else (args.figure_id,)
    out = Path(args.out or ".")
    for fid in ids:
        run_figure(config, fid, out, jobs=args.jobs)
        print(out / f"fig_{fid}.csv")


def cmd_calibrate(args, config):
    targets = None
    if args.target:
        targets = {}
        for name, value in args.target:
            entry = REGISTRY.get(name)
            if entry is None:
                raise ConfigError(f"unknown calibration target; known: {', '.join(REGISTRY)}", name)
            targets[name] = value * 1e-3 if entry.unit == "m" else value
    new, rows = calibrate(config, targets)
    text = format_report(rows)
    sys.stdout.write(text)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "calibrated.toml").write_bytes(dumps_config(new).encode("utf-8"))
        (out / "calibration.txt").write_bytes(text.encode("utf-8"))


def cmd_compare(args, config):
    if args.model:
        model = SweepResult.from_csv(args.model)
    elif args.figure:
        model = run_figure(config, args.figure, jobs=args.jobs)
    else:
        raise ConfigError("give --model CSV or --figure ID", "compare")
    experiment = ExperimentRecord.from_csv(args.experiment, column=args.column)
    unit = model.units.get(args.series)
    if unit is None:
        raise ConfigError(f"model has no series {args.series!r}", "compare.series")
    tolerance = args.tolerance / boundary_unit(unit, config.angle_io_unit)[1]
    rep = compare(model, args.series, experiment, tolerance)
    residuals = rep.to_result(model.abscissa_name, model.units[model.abscissa_name], unit)
    _emit(residuals, args, config, "compare")
    print(rep.summary(), file=sys.stderr)
    if not rep.passed:
        raise CompareFailure(rep.summary())


def cmd_report(args, config):
    text = report(config)
    sys.stdout.write(text)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.txt").write_bytes(text.encode("utf-8"))


def _build_replace(section, obj, **changes):
    init = {f.name: getattr(obj, f.name) for f in dataclasses.fields(obj) if f.init}
    try:
        return type(obj)(**{**init, **changes})
    except ConfigError as exc:
        raise ConfigError(exc.message, f"{section}.{exc.field}") from None


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help=f"TOML config file (default: ${ENV_CONFIG} or packaged defaults)")
    common.add_argument("--out", help="output directory (default: write CSV to stdout)")
    common.add_argument("--format", choices=["csv"], default="csv", help="output format")
    common.add_argument("--jobs", type=int, default=1, help="worker threads for grid evaluation")

    parser = argparse.ArgumentParser(prog="arthrosim", description="Elbow and forearm statics models.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hr-dislocation", parents=[common], help="humeroradial force vs LCL elongation")
    p.add_argument("--theta-s", type=float, help="rim angle override (config angle unit)")
    p.add_argument("--n", type=int, default=200)
    p.set_defaults(func=cmd_hr_dislocation)

    p = sub.add_parser("tfcc", parents=[common], help="DRUL/PRUL elongation vs forearm rotation")
    p.add_argument("--range", type=float, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--n", type=int, default=447)
    p.set_defaults(func=cmd_tfcc)

    p = sub.add_parser("iom-strain", parents=[common], help="IOM bundle strain vs radius deflection")
    p.add_argument("--range", type=float, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--n", type=int, default=161)
    p.add_argument("--reference", choices=["model", "table"], default="model")
    p.set_defaults(func=cmd_iom_strain)

    p = sub.add_parser("iom-equilibrium", parents=[common], help="radius deflection vs lateral force")
    p.add_argument("--force-max", type=float, default=2.0, help="largest lateral force, N")
    p.add_argument("--n", type=int, default=21)
    p.add_argument("--lever-mm", type=float, help="force lever about A (default: radius length)")
    p.add_argument("--side", choices=["left", "right", "both"], default="both")
    p.set_defaults(func=cmd_iom_equilibrium)

    p = sub.add_parser("mcl-strain", parents=[common], help="MCL segment strain vs elbow flexion")
    p.add_argument("--range", type=float, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--n", type=int, default=562)
    p.add_argument("--mode", choices=list(mcl.STRAIN_MODES))
    p.set_defaults(func=cmd_mcl_strain)

    p = sub.add_parser("torque", parents=[common], help="joint torque envelope at tendon force limits")
    p.add_argument("--joint", choices=list(actuation.JOINTS), required=True)
    p.add_argument("--n", type=int, default=181)
    p.add_argument("--theta21", type=float, default=90.0,
                   help="elbow angle for forearm curves (config angle unit)")
    p.add_argument("--force-override", type=_key_value, action="append", metavar="NAME=N",
                   help=f"tendon force limit, one of {', '.join(FORCE_FIELDS)}")
    p.set_defaults(func=cmd_torque)

    p = sub.add_parser("figure", parents=[common], help="write fig_<id>.csv for a reproduced figure")
    p.add_argument("figure_id", choices=[*FIGURES, "all"])
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("calibrate", parents=[common], help="fit unpublished geometry to targets")
    p.add_argument("--target", type=_key_value, action="append", metavar="NAME=VALUE",
                   help=f"targets in N*m (prul_excursion in mm); known: {', '.join(REGISTRY)}")
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("compare", parents=[common], help="residuals of experiment vs model curve")
    p.add_argument("--experiment", required=True, help="experiment CSV")
    p.add_argument("--column", help="experiment value column (default: first)")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--model", help="model CSV")
    group.add_argument("--figure", choices=list(FIGURES), help="compute the model curve")
    p.add_argument("--series", required=True, help="model series name, without unit suffix")
    p.add_argument("--tolerance", type=float, required=True,
                   help="max |residual| in the series' file unit (mm, deg, N*m, ...)")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("report", parents=[common], help="performance summary table")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.jobs < 1:
        print("arthrosim: error: --jobs must be >= 1", file=sys.stderr)
        return EXIT_VALIDATION
    try:
        config = _config(args)
        args.func(args, config)
    except CompareFailure:
        return EXIT_COMPARE
    except (ConfigError, ValueError, OSError) as exc:
        print(f"arthrosim: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (NumericError, GeometryError) as exc:
        print(f"arthrosim: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
