"""Figure reproduction driven by the packaged sweep manifest."""

from __future__ import annotations

import dataclasses
import math
import sys
from functools import lru_cache
from importlib import resources
from pathlib import Path

import numpy as np

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from . import actuation, humeroradial, iom, mcl, tfcc, units
from .config import ModelConfig, config_hash
from .sweep import SweepResult, closed_grid

FIGURES = ("dislocation", "tfcc", "iom-strain", "mcl", "flexion-torque", "forearm-torque")


@lru_cache(maxsize=1)
def manifest() -> dict:
    text = resources.files("arthrosim").joinpath("data/figures.toml").read_text(encoding="utf-8")
    return tomllib.loads(text)


def figure_spec(figure_id: str) -> dict:
    if figure_id not in FIGURES:
        raise ValueError(f"unknown figure {figure_id!r}; choose from {', '.join(FIGURES)}")
    return manifest()["figures"][figure_id]


def with_provenance(result: SweepResult, config: ModelConfig, **extra) -> SweepResult:
    prov = {**result.provenance, "config_hash": config_hash(config), **extra}
    return dataclasses.replace(result, provenance=prov)


def _deg_range(spec, rom_rad):
    if spec["range"] == "rom":
        return tuple(float(units.rad_to_deg(v)) for v in rom_rad)
    return tuple(spec["range"])


def dislocation_family(geom: humeroradial.HumeroradialGeometry, theta_s_deg, n: int) -> SweepResult:
    """Force-elongation curves for several rim angles on a shared elongation grid.

    Each curve ends at its own flattening elongation; later rows are NaN.
    """
    members = [dataclasses.replace(geom, theta_s=math.radians(t)) for t in theta_s_deg]
    d = closed_grid(0.0, max(g.max_elongation for g in members), n)
    series, units, notes = {}, {"delta_ls": "m"}, []
    for t, g in zip(theta_s_deg, members):
        col = np.full(d.shape, np.nan)
        inside = d <= g.max_elongation
        col[inside] = humeroradial.external_force(g, d[inside])
        name = f"f_e_theta_s_{t:g}"
        series[name], units[name] = col, "N"
        delta_lp, f_peak = humeroradial.dislocation_threshold(g)
        notes.append(f"theta_s={t:g} deg: delta_lp={delta_lp * 1e3:.9g} mm, f_peak={f_peak:.9g} N")
    return SweepResult("delta_ls", d, series, units, provenance={"module": "humeroradial"},
                       notes=tuple(notes))


def run_figure(config: ModelConfig, figure_id: str, out_dir=None, jobs: int = 1) -> SweepResult:
    """Compute one figure's curves; writes ``fig_<id>.csv`` when ``out_dir`` is given."""
    spec = figure_spec(figure_id)
    if figure_id == "dislocation":
        result = dislocation_family(config.humeroradial, spec["theta_s"], spec["n"])
    elif figure_id == "tfcc":
        rng = _deg_range(spec, config.joint.theta22_model_range)
        result = tfcc.tfcc_curve(config.tfcc, rng, spec["n"], jobs=jobs)
    elif figure_id == "iom-strain":
        result = iom.bundle_strain_curve(config.linkage, config.bundles, tuple(spec["range"]),
                                         spec["n"], jobs=jobs)
    elif figure_id == "mcl":
        rng = _deg_range(spec, config.joint.theta21_range)
        result = mcl.mcl_curve(config.mcl, rng, spec["n"], jobs=jobs)
    elif figure_id == "flexion-torque":
        result = actuation.torque_envelope(config, "flexion", spec["n"], jobs=jobs)
    else:
        result = actuation.torque_envelope(config, "forearm", spec["n"],
                                           theta21_fixed=math.radians(spec["theta21"]), jobs=jobs)
    result = with_provenance(result, config, figure=figure_id)
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        result.to_csv(out / f"fig_{figure_id}.csv")
    return result
