"""Lateral dislocation of the humeroradial ball-and-socket joint.

Planar model: O is the capitulum centre, A the annular-ligament hinge on the
radius, T the rim contact point.  The LCL is a linear spring OA.  Pushing the
distal radius sideways slides the contact from T to T' and stretches OA to
OA'; triangle T'OA' has sides ``l_s1 = |OA'|``, ``l_a = |T'A'|`` and
``r = |OT'|``.  The rim angle ``theta_s1`` (angle T'OA') shrinks as the LCL
stretches and the joint is fully separated when it reaches zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, GeometryError
from .numerics import Maximum, maximize_1d

_EDGE_TOL = 1e-12


@dataclass(frozen=True)
class HumeroradialGeometry:
    l_a: float = 12e-3       # |TA|, m
    r: float = 10e-3         # capitulum radius |OT|, m
    gamma: float = math.radians(70.0)   # angle between TA and the radius axis
    theta_s: float = math.radians(25.0)  # initial rim angle
    k: float = 5e4           # LCL stiffness, N/m
    l_e: float = 0.2         # moment arm of the external force about A, m
    l_s0: float = field(init=False)

    def __post_init__(self):
        for name in ("l_a", "r", "l_e"):
            if not getattr(self, name) > 0:
                raise ConfigError("must be > 0", name)
        if not self.k > 0:
            raise ConfigError("stiffness must be > 0", "k")
        if not 0 < self.theta_s < math.pi / 2:
            raise ConfigError("must lie in (0, 90) deg", "theta_s")
        if not 0 < self.gamma < math.pi:
            raise ConfigError("must lie in (0, 180) deg", "gamma")
        h = self.r * math.sin(self.theta_s)
        if not self.l_a > h:
            raise ConfigError("rim triangle cannot close: need l_a > r*sin(theta_s)", "l_a")
        # Rest LCL length closes the triangle with angle theta_s at O.
        l_s0 = self.r * math.cos(self.theta_s) + math.sqrt(self.l_a ** 2 - h ** 2)
        object.__setattr__(self, "l_s0", l_s0)

    @property
    def max_elongation(self) -> float:
        """LCL elongation at which the triangle flattens (``theta_s1 = 0``)."""
        return self.l_a + self.r - self.l_s0


@dataclass(frozen=True, eq=False)
class DislocationProfile:
    delta_ls: np.ndarray
    f_e: np.ndarray
    theta_s1: np.ndarray
    delta_lp: float
    f_peak: float


def _lcl_length(geom: HumeroradialGeometry, delta_ls):
    d = np.asarray(delta_ls, dtype=float)
    if np.any(d < 0):
        raise GeometryError("LCL elongation must be >= 0")
    edge = geom.max_elongation
    if np.any(d > edge * (1 + _EDGE_TOL)):
        raise GeometryError(
            f"elongation beyond geometric dislocation (max {edge:.6g} m)"
        )
    at_edge = d >= edge
    return np.where(at_edge, geom.l_a + geom.r, geom.l_s0 + d), at_edge


def deflection_from_elongation(geom: HumeroradialGeometry, delta_ls):
    """Radius deflection ``beta`` and rim angle ``theta_s1`` for an LCL elongation.

    Accepts scalars or arrays.  Raises :class:`GeometryError` beyond the
    fully separated configuration.
    """
    l_s1, at_edge = _lcl_length(geom, delta_ls)
    cos_a1 = (l_s1 ** 2 + geom.l_a ** 2 - geom.r ** 2) / (2 * l_s1 * geom.l_a)
    if np.any(np.abs(cos_a1) > 1 + _EDGE_TOL):
        raise GeometryError("beyond geometric dislocation: triangle T'OA' cannot close")
    alpha1 = np.arccos(np.clip(cos_a1, -1.0, 1.0))
    sin_t = geom.l_a * np.sin(alpha1) / geom.r
    if np.any(np.abs(sin_t) > 1 + _EDGE_TOL):
        raise GeometryError("beyond geometric dislocation: sine-law argument exceeds 1")
    theta_s1 = np.arcsin(np.clip(sin_t, -1.0, 1.0))
    alpha1 = np.where(at_edge, 0.0, alpha1)
    theta_s1 = np.where(at_edge, 0.0, theta_s1)
    beta = math.pi - geom.gamma - alpha1
    if beta.ndim == 0:
        return float(beta), float(theta_s1)
    return beta, theta_s1


def external_force(geom: HumeroradialGeometry, delta_ls, support=False):
    """Lateral force on the distal radius that holds the LCL at ``delta_ls``.

    With ``support=True`` also returns the annular-ligament support force
    ``F_a = F_s sin(theta_s1) + F_e``.
    """
    d = np.asarray(delta_ls, dtype=float)
    l_s1, _ = _lcl_length(geom, d)
    _, theta_s1 = deflection_from_elongation(geom, d)
    spring = geom.k * d
    f_e = spring * l_s1 * np.tan(theta_s1) / geom.l_e
    if np.ndim(f_e) == 0:
        f_e = float(f_e)
    if not support:
        return f_e
    f_s = spring / np.cos(theta_s1)
    f_a = f_s * np.sin(theta_s1) + f_e
    return f_e, (float(f_a) if np.ndim(f_a) == 0 else f_a)


def dislocation_threshold(geom: HumeroradialGeometry, tol: float = 1e-13) -> tuple[float, float]:
    """``(delta_lp, f_peak)``: the elongation at peak resisting force and that force."""
    peak: Maximum = maximize_1d(lambda d: external_force(geom, d), 0.0,
                                geom.max_elongation, tol=tol)
    if peak.at_boundary or not peak.max > 0:
        raise GeometryError("degenerate dislocation profile: force is monotone over the feasible range")
    return peak.argmax, peak.max


def dislocation_profile(geom: HumeroradialGeometry, n_samples: int = 200) -> DislocationProfile:
    if n_samples < 2:
        raise ValueError("n_samples must be >= 2")
    d = np.linspace(0.0, geom.max_elongation, n_samples)
    d[-1] = geom.max_elongation
    _, theta_s1 = deflection_from_elongation(geom, d)
    f_e = external_force(geom, d)
    delta_lp, f_peak = dislocation_threshold(geom)
    return DislocationProfile(d, f_e, theta_s1, delta_lp, f_peak)
