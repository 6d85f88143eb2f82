"""Tendon-driven joint torque models for the elbow and forearm."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .units import rad_to_deg
from .sweep import SweepResult, closed_grid, degree_grid, parallel_map

CONTINUITY_TOL = 1e-9
JOINTS = ("flexion", "extension", "pronation", "supination", "forearm")


@dataclass(frozen=True)
class ElbowActuationGeometry:
    """Routing of one elbow flexor plus the extensor acting on the same link.

    The flexor tendon wraps a pulley of radius ``r_routing`` until the joint
    reaches ``gamma``; beyond that its moment arm is set by the attachment
    at ``l_link`` along the link and ``l_offset`` across it.
    """

    r_routing: float          # R
    l_link: float             # L
    l_offset: float           # l
    f_t1: float = 250.0       # flexor tendon force limit, N
    f_text: float = 0.0       # extensor tendon force limit, N
    r_ext: float = 45e-3      # extensor moment arm, m
    r_stage: float | None = None  # r in the stage formulas; defaults to l_offset

    def __post_init__(self):
        for name in ("r_routing", "l_link", "l_offset", "r_ext"):
            if not getattr(self, name) > 0:
                raise ConfigError("must be > 0", name)
        if self.r_stage is not None and not self.r_stage > 0:
            raise ConfigError("must be > 0", "r_stage")
        for name in ("f_t1", "f_text"):
            if not getattr(self, name) >= 0:
                raise ConfigError("must be >= 0", name)
        if not self.r_routing < math.hypot(self.l_link, self.l_offset):
            raise ConfigError("routing radius must be below sqrt(L^2 + l^2)", "r_routing")
        if not 0 < self.gamma < math.pi / 2:
            raise ConfigError(f"stage angle gamma={math.degrees(self.gamma):.3f} deg outside (0, 90)",
                              "l_offset")
        jump = max(abs(j) for j in self.stage_jumps())
        if jump > CONTINUITY_TOL:
            raise ConfigError(
                f"flexion torque jumps by {jump:.3e} N*m at the stage boundary; "
                "r_stage is inconsistent with r_routing",
                "r_stage",
            )

    @property
    def gamma(self) -> float:
        return (math.asin(self.r_routing / math.hypot(self.l_link, self.l_offset))
                - math.atan(self.l_offset / self.l_link))

    @property
    def stage_radius(self) -> float:
        return self.l_offset if self.r_stage is None else self.r_stage

    def stage_jumps(self) -> tuple[float, float]:
        """Torque differences stage1-stage2 and stage2-stage3 at the boundary."""
        g = self.gamma
        stage1 = self.f_t1 * self.r_routing
        stage2 = self.f_t1 * (self.stage_radius * math.cos(g) + self.l_link * math.sin(g))
        theta_m = math.pi / 2 - g
        stage3 = self.f_t1 * (self.stage_radius * math.sin(theta_m) + self.l_link * math.cos(theta_m))
        return stage1 - stage2, stage2 - stage3

    def scaled(self, factor: float) -> "ElbowActuationGeometry":
        from dataclasses import replace
        return replace(self, f_t1=self.f_t1 * factor, f_text=self.f_text * factor)


@dataclass(frozen=True)
class PronationGeometry:
    r_sec: float = 9.536784741144414e-3   # radius cross-section circle
    theta_m0: float = math.radians(100.0)
    theta_tilt: float = 0.0               # tendon angle out of the section plane
    f_t2: float = 734.0

    def __post_init__(self):
        if not self.r_sec > 0:
            raise ConfigError("must be > 0", "r_sec")
        if not 0 < self.theta_m0 < math.pi:
            raise ConfigError("must lie in (0, 180) deg", "theta_m0")
        if not 0 <= self.theta_tilt < math.pi / 2:
            raise ConfigError("must lie in [0, 90) deg", "theta_tilt")
        if not self.f_t2 >= 0:
            raise ConfigError("must be >= 0", "f_t2")


@dataclass(frozen=True)
class SupinationGeometry:
    r_sec: float = 9.536784741144414e-3
    theta_n0: float = math.radians(20.0)
    r_t: float = 22.172765677807182e-3     # radial tuberosity radius
    f_t3: float = 122.0                    # supinator force limit
    f_t4: float = 250.0                    # biceps force limit

    def __post_init__(self):
        for name in ("r_sec", "r_t"):
            if not getattr(self, name) > 0:
                raise ConfigError("must be > 0", name)
        if not 0 < self.theta_n0 < math.pi:
            raise ConfigError("must lie in (0, 180) deg", "theta_n0")
        for name in ("f_t3", "f_t4"):
            if not getattr(self, name) >= 0:
                raise ConfigError("must be >= 0", name)


def flexion_stage(geom: ElbowActuationGeometry, theta21: float) -> int:
    theta_m = math.pi / 2 - theta21
    boundary = math.pi / 2 - geom.gamma
    if theta_m > boundary:
        return 1
    if theta_m == boundary:
        return 2
    return 3


def flexion_torque(geom: ElbowActuationGeometry, theta21: float) -> float:
    """Flexor torque at the tendon force limit.

    Stage 1 wraps the pulley (constant arm ``R``); stage 3 uses the
    attachment geometry; stage 2 is the single boundary angle ``gamma``.
    """
    stage = flexion_stage(geom, theta21)
    if stage == 1:
        return geom.f_t1 * geom.r_routing
    if stage == 2:
        g = geom.gamma
        return geom.f_t1 * (geom.stage_radius * math.cos(g) + geom.l_link * math.sin(g))
    theta_m = math.pi / 2 - theta21
    return geom.f_t1 * (geom.stage_radius * math.sin(theta_m) + geom.l_link * math.cos(theta_m))


def extension_torque(geom: ElbowActuationGeometry, theta21: float) -> float:
    """Extensor torque; the extensor arm does not vary with the joint angle."""
    return geom.f_text * geom.r_ext


def pronation_torque(geom: PronationGeometry, theta22: float) -> float:
    return (geom.f_t2 * math.cos(geom.theta_tilt) * geom.r_sec
            * (1.0 + math.cos(geom.theta_m0 - theta22)))


def supination_torque(geom: SupinationGeometry, theta21: float, theta22: float):
    """``(tau_s1, tau_s2, total)``: supinator, biceps and combined torque."""
    tau_s1 = geom.f_t3 * geom.r_sec * (1.0 + math.cos(geom.theta_n0 + theta22))
    tau_s2 = geom.f_t4 * geom.r_t * math.sin(theta21)
    return tau_s1, tau_s2, tau_s1 + tau_s2


def _angle_grid(lo: float, hi: float, n: int) -> np.ndarray:
    if lo == hi:
        return closed_grid(lo, hi, 1)
    return degree_grid(float(rad_to_deg(lo)), float(rad_to_deg(hi)), n)


def torque_envelope(config, joint: str, n: int = 181, theta21_fixed: float = math.pi / 2,
                    jobs: int = 1) -> SweepResult:
    """Torque curves at tendon force limits over the joint's range of motion.

    ``flexion``: brachialis, biceps and combined against ``theta21``.
    ``extension``: constant triceps torque against ``theta21``.
    ``pronation`` / ``supination`` / ``forearm``: against model-frame
    ``theta22``; supination is evaluated at ``theta21_fixed``.
    """
    if joint not in JOINTS:
        raise ValueError(f"joint must be one of {JOINTS}")
    prov = {"module": "actuation", "joint": joint}
    elbow = config.elbow_actuation
    if joint in ("flexion", "extension"):
        xs = _angle_grid(*config.joint.theta21_range, n)
        if joint == "flexion":
            rows = parallel_map(lambda t: (flexion_torque(elbow.brachialis, t),
                                           flexion_torque(elbow.biceps, t)), list(xs), jobs)
            brach, bic = (np.array(c) for c in zip(*rows))
            series = {"brachialis": brach, "biceps": bic, "combined": brach + bic}
        else:
            ext = [extension_torque(elbow.brachialis, t) + extension_torque(elbow.biceps, t) for t in xs]
            series = {"extension": np.array(ext)}
        units = {"theta21": "rad", **{k: "N*m" for k in series}}
        return SweepResult("theta21", xs, series, units, provenance=prov)

    xs = _angle_grid(*config.joint.theta22_model_range, n)
    pro = np.array(parallel_map(lambda t: pronation_torque(config.pronation, t), list(xs), jobs))
    sup = parallel_map(lambda t: supination_torque(config.supination, theta21_fixed, t), list(xs), jobs)
    s1, s2, total = (np.array(c) for c in zip(*sup))
    if joint == "pronation":
        series = {"pronation": pro}
    elif joint == "supination":
        series = {"supinator": s1, "biceps": s2, "supination": total}
    else:
        series = {"pronation": pro, "supinator": s1, "supination": total}
    units = {"theta22": "rad", **{k: "N*m" for k in series}}
    notes = (f"theta22 measured from reference pose {math.degrees(config.joint.theta22_reference):.9g} deg",
             f"supination evaluated at theta21 = {math.degrees(theta21_fixed):.9g} deg")
    return SweepResult("theta22", xs, series, units, provenance=prov, notes=notes)
