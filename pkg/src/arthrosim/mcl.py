"""Anterior/posterior MCL segment strain against elbow flexion.

Both segments originate eccentrically (``O_a`` above, ``O_p`` below the
elbow centre O) and insert at radius ``r_ins`` on the ulna.  At 90 deg of
flexion every segment is at its rest length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError
from .sweep import SweepResult, degree_grid, parallel_map

HALF_PI = math.pi / 2
STRAIN_MODES = ("rest", "literal")


def _segment(ecc, radius, angle):
    return math.sqrt(ecc * ecc + radius * radius - 2.0 * ecc * radius * math.cos(angle))


@dataclass(frozen=True)
class MclGeometry:
    l_oa: float = 6e-3           # eccentricity O O_a
    l_op_ecc: float = 6e-3       # eccentricity O O_p
    r_ins: float = 25e-3         # insertion radius |OA| = |OP|
    theta_a0: float = math.radians(60.0)
    theta_p0: float = math.radians(60.0)
    strain_mode: str = "rest"
    l_a0: float = field(init=False)
    l_p0: float = field(init=False)

    def __post_init__(self):
        for name in ("l_oa", "l_op_ecc", "r_ins"):
            if not getattr(self, name) > 0:
                raise ConfigError("must be > 0", name)
        for name in ("theta_a0", "theta_p0"):
            if not 0 < getattr(self, name) < math.pi:
                raise ConfigError("must lie in (0, 180) deg", name)
        if self.strain_mode not in STRAIN_MODES:
            raise ConfigError(f"must be one of {STRAIN_MODES}", "strain_mode")
        la, lp = mcl_lengths(self, HALF_PI)
        object.__setattr__(self, "l_a0", la)
        object.__setattr__(self, "l_p0", lp)


def mcl_lengths(geom: MclGeometry, theta21: float) -> tuple[float, float]:
    """Anterior and posterior segment lengths at elbow angle ``theta21``."""
    theta_a1 = geom.theta_a0 + (HALF_PI - theta21)
    theta_p1 = geom.theta_p0 + (theta21 - HALF_PI)
    return (_segment(geom.l_oa, geom.r_ins, theta_a1),
            _segment(geom.l_op_ecc, geom.r_ins, theta_p1))


def mcl_strains(geom: MclGeometry, theta21: float, mode: str | None = None) -> tuple[float, float]:
    """Engineering strains ``(eps_a, eps_p)``.

    ``mode="rest"`` normalizes by the segment rest lengths.  ``"literal"``
    reproduces the printed normalization by the eccentricities instead.
    """
    mode = mode or geom.strain_mode
    la, lp = mcl_lengths(geom, theta21)
    if mode == "rest":
        return (la - geom.l_a0) / geom.l_a0, (lp - geom.l_p0) / geom.l_p0
    if mode == "literal":
        return (la - geom.l_oa) / geom.l_oa, (lp - geom.l_op_ecc) / geom.l_op_ecc
    raise ValueError(f"unknown strain mode {mode!r}")


def mcl_curve(geom: MclGeometry, theta21_range_deg, n: int, jobs: int = 1) -> SweepResult:
    thetas = degree_grid(theta21_range_deg[0], theta21_range_deg[1], n)
    pairs = parallel_map(lambda t: mcl_strains(geom, t), list(thetas), jobs)
    eps_a, eps_p = (np.array(c) for c in zip(*pairs))
    return SweepResult(
        "theta21", thetas, {"eps_anterior": eps_a, "eps_posterior": eps_p},
        {"theta21": "rad", "eps_anterior": "1", "eps_posterior": "1"},
        provenance={"module": "mcl", "strain_mode": geom.strain_mode},
    )
