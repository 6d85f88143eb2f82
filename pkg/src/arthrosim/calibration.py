"""Calibration of unpublished geometry to reference scalar targets."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from . import actuation, tfcc
from .config import ModelConfig, get_param, replace_param
from .errors import ConfigError, NumericError
from .figures import manifest
from .numerics import fit_scalar, maximize_1d

FIT_TOL = 1e-10


def _extension(c: ModelConfig) -> float:
    e = c.elbow_actuation
    return actuation.extension_torque(e.brachialis, 0.0) + actuation.extension_torque(e.biceps, 0.0)


def _flexion_peak(c: ModelConfig) -> float:
    e = c.elbow_actuation
    f = lambda t: actuation.flexion_torque(e.brachialis, t) + actuation.flexion_torque(e.biceps, t)
    return maximize_1d(f, *c.joint.theta21_range).max


def _pronation_peak(c: ModelConfig) -> float:
    return maximize_1d(lambda t: actuation.pronation_torque(c.pronation, t),
                       *c.joint.theta22_model_range).max


def _supination_peak(c: ModelConfig) -> float:
    return maximize_1d(lambda t: actuation.supination_torque(c.supination, math.pi / 2, t)[2],
                       *c.joint.theta22_model_range).max


def _prul_excursion(c: ModelConfig) -> float:
    lo, hi = c.joint.theta22_model_range
    return maximize_1d(lambda t: abs(tfcc.prul_elongation(c.tfcc, t)), lo, hi).max


def _biceps_link_bounds(c: ModelConfig):
    b = c.elbow_actuation.biceps
    # L must keep R < sqrt(L^2 + l^2), i.e. a positive stage angle.
    lo = 1.01 * math.sqrt(max(b.r_routing ** 2 - b.l_offset ** 2, 0.0))
    return max(lo, 1e-4), 0.2


@dataclass(frozen=True)
class Target:
    parameter: str
    evaluate: Callable[[ModelConfig], float]
    bounds: Callable[[ModelConfig], tuple[float, float]]
    unit: str


REGISTRY = {
    "extension": Target("elbow_actuation.brachialis.r_ext", _extension,
                        lambda c: (1e-4, 0.2), "N*m"),
    "pronation_peak": Target("pronation.r_sec", _pronation_peak, lambda c: (1e-4, 0.05), "N*m"),
    "supination_peak": Target("supination.r_t", _supination_peak, lambda c: (1e-4, 0.1), "N*m"),
    "flexion_peak": Target("elbow_actuation.biceps.l_link", _flexion_peak, _biceps_link_bounds, "N*m"),
    "prul_excursion": Target("tfcc.l_or", _prul_excursion, lambda c: (1e-5, 5e-3), "m"),
}


@dataclass(frozen=True)
class CalibrationRow:
    target: str
    parameter: str
    lo: float
    hi: float
    value: float
    target_value: float
    achieved: float

    @property
    def residual(self) -> float:
        return self.achieved - self.target_value


def default_targets() -> dict[str, float]:
    return dict(manifest()["calibration"])


def calibrate(config: ModelConfig, targets: dict[str, float] | None = None,
              tol: float = FIT_TOL) -> tuple[ModelConfig, list[CalibrationRow]]:
    """Fit each target's parameter in turn; returns the new config and a report.

    A parameter that already meets its target within ``tol`` is left
    untouched, which makes repeated calibration a no-op.
    """
    targets = default_targets() if targets is None else targets
    rows = []
    for name, value in targets.items():
        if name not in REGISTRY:
            raise ConfigError(f"unknown calibration target; known: {', '.join(REGISTRY)}", name)
        entry = REGISTRY[name]
        lo, hi = entry.bounds(config)
        current = entry.evaluate(config)

        def g(p, entry=entry):
            return entry.evaluate(replace_param(config, entry.parameter, p))

        if abs(current - value) > tol:
            try:
                p = fit_scalar(value, g, lo, hi, tol=tol)
            except NumericError:
                g_lo, g_hi = g(lo), g(hi)
                raise NumericError(
                    f"target {name}={value:g} unreachable with {entry.parameter} in "
                    f"[{lo:g}, {hi:g}]; achievable range [{min(g_lo, g_hi):.6g}, {max(g_lo, g_hi):.6g}]"
                ) from None
            config = replace_param(config, entry.parameter, p)
            current = entry.evaluate(config)
        rows.append(CalibrationRow(name, entry.parameter, lo, hi,
                                   get_param(config, entry.parameter), value, current))
    return config, rows


def format_report(rows: list[CalibrationRow]) -> str:
    lines = [f"{'target':<16}{'parameter':<34}{'bounds':<24}{'fitted':>16}{'residual':>14}"]
    for r in rows:
        bounds = f"[{r.lo:.4g}, {r.hi:.4g}]"
        lines.append(f"{r.target:<16}{r.parameter:<34}{bounds:<24}{r.value:>16.9g}{r.residual:>14.3e}")
    return "\n".join(lines) + "\n"
