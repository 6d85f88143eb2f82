"""Text summary laid out like a joint performance table."""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import actuation, humeroradial, tfcc
from .config import ModelConfig, config_hash
from .errors import GeometryError
from .numerics import maximize_1d
from .units import rad_to_deg


@dataclass(frozen=True)
class PerformanceSummary:
    theta21_range: tuple[float, float]
    theta22_range: tuple[float, float]     # reporting frame
    flexion_peak: float
    flexion_peak_angle: float
    extension: float
    pronation_peak: float
    supination_peak: float
    delta_lp: float | None
    f_peak: float | None
    prul_max: float
    single_angle: bool

    @property
    def elbow_torque_range(self) -> tuple[float, float]:
        return -self.extension, self.flexion_peak

    @property
    def forearm_torque_range(self) -> tuple[float, float]:
        return -self.pronation_peak, self.supination_peak


def _peak(f, lo, hi):
    if lo == hi:
        return lo, f(lo)
    m = maximize_1d(f, lo, hi)
    return m.argmax, m.max


def summarize(config: ModelConfig, theta21_fixed: float = math.pi / 2) -> PerformanceSummary:
    e = config.elbow_actuation
    t21 = config.joint.theta21_range
    t22 = config.joint.theta22_model_range
    flex_at, flex = _peak(lambda t: actuation.flexion_torque(e.brachialis, t)
                          + actuation.flexion_torque(e.biceps, t), *t21)
    ext = actuation.extension_torque(e.brachialis, t21[0]) + actuation.extension_torque(e.biceps, t21[0])
    _, pro = _peak(lambda t: actuation.pronation_torque(config.pronation, t), *t22)
    _, sup = _peak(lambda t: actuation.supination_torque(config.supination, theta21_fixed, t)[2], *t22)
    _, prul = _peak(lambda t: abs(tfcc.prul_elongation(config.tfcc, t)), *t22)
    try:
        delta_lp, f_peak = humeroradial.dislocation_threshold(config.humeroradial)
    except GeometryError:
        delta_lp = f_peak = None
    return PerformanceSummary(
        theta21_range=t21,
        theta22_range=(config.joint.theta22_min, config.joint.theta22_max),
        flexion_peak=flex, flexion_peak_angle=flex_at, extension=ext,
        pronation_peak=pro, supination_peak=sup,
        delta_lp=delta_lp, f_peak=f_peak, prul_max=prul,
        single_angle=t21[0] == t21[1] and t22[0] == t22[1],
    )


def _deg(x: float) -> str:
    return f"{float(rad_to_deg(x)):g}"


def _span(lo: float, hi: float, fmt) -> str:
    return fmt(lo) if lo == hi else f"{fmt(lo)} to {fmt(hi)}"


def format_summary(s: PerformanceSummary, config: ModelConfig) -> str:
    num = lambda v: f"{v:.4g}"
    rows = [
        ("Elbow", _span(*s.theta21_range, _deg), _span(*s.elbow_torque_range, num)),
        ("Forearm", _span(*s.theta22_range, _deg), _span(*s.forearm_torque_range, num)),
    ]
    lines = [
        "Performance of the modelled elbow and forearm (all values model-derived)",
        f"config {config_hash(config)}",
        "",
        f"{'Joint':<10}{'ROM (deg)':<22}Torque (N*m)",
    ]
    lines += [f"{a:<10}{b:<22}{c}" for a, b, c in rows]
    lines += [
        "",
        "Torque signs: elbow extension and forearm pronation are negative.",
        f"Flexion peak at theta21 = {math.degrees(s.flexion_peak_angle):.2f} deg.",
    ]
    if s.single_angle:
        lines.append("Range of motion collapsed to a point: values at a single angle, no sweep.")
    if s.delta_lp is None:
        lines.append("Dislocation threshold: none (force monotone over the feasible range)")
    else:
        lines.append(f"Dislocation threshold: delta_lp = {s.delta_lp * 1e3:.4g} mm at "
                     f"F_e = {s.f_peak:.4g} N")
    lines.append(f"Max PRUL excursion: {s.prul_max * 1e3:.4g} mm")
    return "\n".join(lines) + "\n"


def report(config: ModelConfig) -> str:
    return format_summary(summarize(config), config)
