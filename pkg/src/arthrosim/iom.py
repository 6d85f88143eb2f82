"""Interosseous-membrane bundles on the planar radius-ulna four-bar.

A and B are the proximal hinges of the radius (AD) and the ulna (BC); CD is
the TFCC tie.  Angles ``theta_d`` (BAD) and ``theta_e`` (ABC) are measured
inside the quadrilateral.  Each bundle runs between an ulnar insertion F
(``|BF|`` along the ulna, rotated by ``angle_cbf`` towards A) and a radial
insertion G (``|AG|`` along the radius, rotated by ``angle_dag``).

Coordinates used by :func:`bundle_endpoints`: A at the origin, B on the
positive x axis, bones pointing towards +y.  Increasing ``theta_d`` is the
clockwise (leftward-force) deflection; it loads the ``ccw`` bundle group.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import CalibrationWarning, ConfigError, GeometryError, NumericError
from .numerics import bisect_root
from .sweep import SweepResult, degree_grid, parallel_map

_COS_TOL = 1e-12
REST_TOLERANCE = 0.05
WORKING_RANGE = math.radians(10.0)
DIRECTIONS = ("ccw", "cw")


def _acos(x: float, where: str) -> float:
    if abs(x) > 1.0 + _COS_TOL:
        raise GeometryError(f"quadrilateral cannot close: {where} (cosine {x:.12g})")
    return math.acos(min(1.0, max(-1.0, x)))


@dataclass(frozen=True)
class ForearmLinkage:
    l1: float = 4.60e-3        # AB
    l3: float = 100e-3         # AD, radius link
    l4: float = 100e-3         # BC, ulna link
    l5: float = 2.331204e-3    # CD, TFCC tie
    theta_d_rest: float = math.radians(89.0)

    def __post_init__(self):
        for name in ("l1", "l3", "l4", "l5"):
            if not getattr(self, name) > 0:
                raise ConfigError("must be > 0", name)
        if not 0 < self.theta_d_rest < math.pi:
            raise ConfigError("must lie in (0, 180) deg", "theta_d_rest")
        try:
            ulna_angle(self, self.theta_d_rest)
        except GeometryError as exc:
            raise ConfigError(f"linkage does not close at rest ({exc})", "l5") from None

    @property
    def theta_e_rest(self) -> float:
        return ulna_angle(self, self.theta_d_rest)


@dataclass(frozen=True)
class IomBundle:
    id: int
    direction: str            # "ccw" or "cw" group of the table
    ag: float                 # |AG| (or |AN|), m
    bf: float                 # |BF| (or |BM|), m
    rest_len: float           # |FG| (or |MN|), m
    angle_dag: float          # angle DAG (or DAN), rad
    angle_cbf: float          # angle CBF (or CBM), rad
    stiffness: float = 2e4    # N/m, for equilibrium only
    name: str = ""

    def __post_init__(self):
        if not 1 <= self.id <= 7:
            raise ConfigError("bundle id must be in 1..7", "id")
        if self.direction not in DIRECTIONS:
            raise ConfigError(f"must be one of {DIRECTIONS}", "direction")
        for name in ("ag", "bf", "rest_len"):
            if not getattr(self, name) > 0:
                raise ConfigError("must be > 0", name)
        if not self.stiffness > 0:
            raise ConfigError("stiffness must be > 0", "stiffness")


# Table of bundle insertion parameters: id, group, AG, BF, FG (mm), DAG, CBF (deg).
TABLE_BUNDLES = (
    (7, "ccw", 58.43, 47.58, 10.91, -1.02, 1.19),
    (3, "ccw", 18.51, 14.29, 4.53, -3.07, 7.12),
    (1, "ccw", 11.56, 5.83, 6.01, -7.14, 17.64),
    (6, "cw", 38.58, 42.77, 4.78, 0.0, 1.83),
    (5, "cw", 32.32, 38.31, 6.32, 0.0, 2.54),
    (4, "cw", 25.49, 32.94, 7.48, -1.70, 3.72),
    (2, "cw", 14.53, 23.14, 8.51, -5.49, 7.13),
)


def ulna_angle(linkage: ForearmLinkage, theta_d: float) -> float:
    """Ulna angle ``theta_e`` (ABC) that closes the quadrilateral for a radius angle."""
    l1, l3, l4, l5 = linkage.l1, linkage.l3, linkage.l4, linkage.l5
    l2 = math.sqrt(l1 * l1 + l3 * l3 - 2.0 * l1 * l3 * math.cos(theta_d))
    theta_h = _acos((l1 * l1 + l2 * l2 - l3 * l3) / (2.0 * l1 * l2), "triangle ABD")
    theta_c = _acos((l2 * l2 + l4 * l4 - l5 * l5) / (2.0 * l2 * l4), "triangle BCD")
    return theta_h + theta_c


def _bundle_angles(linkage, bundle, theta_a):
    theta_d = theta_a - bundle.angle_dag
    theta_b = ulna_angle(linkage, theta_d) - bundle.angle_cbf
    return theta_d, theta_b


def bundle_length(linkage: ForearmLinkage, bundle: IomBundle, theta_a: float) -> float:
    """Bundle length for the radius insertion angle ``theta_a`` (BAG).

    Triangle AF'B gives ``|AF'|`` and angle BAF'; projecting F' onto AG'
    gives the two legs of the right triangle whose hypotenuse is the bundle.
    """
    _, theta_b = _bundle_angles(linkage, bundle, theta_a)
    l1, l7 = linkage.l1, bundle.bf
    l6 = math.sqrt(l1 * l1 + l7 * l7 - 2.0 * l1 * l7 * math.cos(theta_b))
    theta_f = _acos((l1 * l1 + l6 * l6 - l7 * l7) / (2.0 * l1 * l6), "triangle AF'B")
    theta_g = theta_a - theta_f
    l9 = l6 * math.sin(theta_g)
    l10 = l6 * math.cos(theta_g)
    l8 = bundle.ag - l10
    return math.hypot(l9, l8)


def rest_theta_a(linkage: ForearmLinkage, bundle: IomBundle) -> float:
    return linkage.theta_d_rest + bundle.angle_dag


def model_rest_length(linkage: ForearmLinkage, bundle: IomBundle) -> float:
    return bundle_length(linkage, bundle, rest_theta_a(linkage, bundle))


def length_at_deflection(linkage, bundle, deflection: float) -> float:
    return bundle_length(linkage, bundle, rest_theta_a(linkage, bundle) + deflection)


def rest_length_deviation(linkage: ForearmLinkage, bundle: IomBundle) -> float:
    """Relative mismatch between the modelled and tabulated rest length."""
    return model_rest_length(linkage, bundle) / bundle.rest_len - 1.0


def check_rest_consistency(linkage, bundles, tolerance=REST_TOLERANCE) -> list[str]:
    """Warn (not fail) for bundles whose modelled rest length misses the table."""
    problems = []
    for b in bundles:
        dev = rest_length_deviation(linkage, b)
        if abs(dev) > tolerance:
            msg = f"bundle {b.id}: modelled rest length deviates {dev:+.1%} from {b.rest_len * 1e3:.2f} mm"
            problems.append(msg)
            warnings.warn(msg, CalibrationWarning, stacklevel=2)
    return problems


def bundle_endpoints(linkage: ForearmLinkage, bundle: IomBundle, theta_d: float):
    """Coordinates ``(G', F')`` of the radial and ulnar insertions, in metres."""
    theta_e = ulna_angle(linkage, theta_d)
    theta_a = theta_d + bundle.angle_dag
    theta_b = theta_e - bundle.angle_cbf
    g = np.array([bundle.ag * math.cos(theta_a), bundle.ag * math.sin(theta_a)])
    f = np.array([linkage.l1 - bundle.bf * math.cos(theta_b), bundle.bf * math.sin(theta_b)])
    return g, f


def bundle_moment_arm(linkage, bundle, theta_d: float) -> float:
    """Perpendicular distance from hinge A to the bundle's line of action."""
    g, f = bundle_endpoints(linkage, bundle, theta_d)
    u = f - g
    return abs(u[0] * g[1] - u[1] * g[0]) / math.hypot(*u)


def bundle_strain_curve(linkage: ForearmLinkage, bundles: Sequence[IomBundle],
                        deflection_range_deg=(-8.0, 8.0), n: int = 161,
                        reference: str = "model", jobs: int = 1) -> SweepResult:
    """Engineering strain of each bundle against radius deflection.

    Deflection is ``theta_a - theta_a_rest`` (identical for every bundle).
    ``reference="model"`` divides by the modelled rest length, so every strain
    is exactly zero at rest; ``"table"`` divides by the tabulated length.
    Emits a signed ``strain_<id>`` and a tension-only ``taut_<id>`` column.
    """
    if reference not in ("model", "table"):
        raise ValueError("reference must be 'model' or 'table'")
    deflections = degree_grid(deflection_range_deg[0], deflection_range_deg[1], n)
    ordered = sorted(bundles, key=lambda b: b.id)
    series, units = {}, {"deflection": "rad"}
    for b in ordered:
        ref = model_rest_length(linkage, b) if reference == "model" else b.rest_len
        lengths = np.array(parallel_map(lambda d: length_at_deflection(linkage, b, d),
                                        list(deflections), jobs))
        strain = (lengths - ref) / ref
        series[f"strain_{b.id}"] = strain
        series[f"taut_{b.id}"] = np.maximum(strain, 0.0)
        units[f"strain_{b.id}"] = units[f"taut_{b.id}"] = "1"
    return SweepResult("deflection", deflections, series, units,
                       provenance={"module": "iom", "strain_reference": reference})


def resisting_torque(linkage, bundles: Iterable[IomBundle], theta_d: float) -> float:
    """Torque about A of all tension-only bundles at radius angle ``theta_d``."""
    deflection = theta_d - linkage.theta_d_rest
    total = 0.0
    for b in bundles:
        stretch = length_at_deflection(linkage, b, deflection) - model_rest_length(linkage, b)
        if stretch > 0.0:
            total += b.stiffness * stretch * bundle_moment_arm(linkage, b, theta_d)
    return total


def lateral_equilibrium(linkage: ForearmLinkage, bundles: Sequence[IomBundle],
                        force: float, lever: float, side: str,
                        max_deflection: float = WORKING_RANGE) -> float:
    """Radius angle ``theta_d`` at which the bundles balance a lateral force.

    ``side="left"`` deflects clockwise (increasing ``theta_d``), ``"right"``
    counter-clockwise.  The returned deflection ``theta_d - theta_d_rest`` is
    the ``theta_a`` deflection of every bundle.
    """
    if force < 0:
        raise ValueError("force must be >= 0")
    if not lever > 0:
        raise ValueError("lever must be > 0")
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    rest = linkage.theta_d_rest
    if force == 0.0:
        return rest
    sign = 1.0 if side == "left" else -1.0
    load = force * lever
    net = lambda delta: resisting_torque(linkage, bundles, rest + sign * delta) - load
    try:
        edge = net(max_deflection)
    except GeometryError:
        edge = None
    if edge is None or edge < 0:
        raise NumericError(
            f"no equilibrium within {math.degrees(max_deflection):.1f} deg: "
            f"load {load:.4g} N*m exceeds the modelled capacity"
        )
    delta = bisect_root(net, 0.0, max_deflection)
    return rest + sign * delta
