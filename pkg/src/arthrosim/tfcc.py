"""DRUL and PRUL elongation during forearm rotation.

``O_r`` is the DRUJ contact-surface rotation centre, ``O_t`` the TFCC
rotation centre, D and P the contact edge points.  Before the DRUL touches the
ECU tendon both ligaments are straight chords ``O_t D`` / ``O_t P``.  Past
``theta_ecu`` the DRUL wraps the tendon at E and its length becomes
``|E D'| + |O_t E|``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError
from .sweep import SweepResult, degree_grid, parallel_map

CONTINUITY_TOL = 1e-9


def _chord(a, b, angle):
    return math.sqrt(max(a * a + b * b - 2.0 * a * b * math.cos(angle), 0.0))


def _chord_slope(a, b, angle):
    """d/d(angle) of :func:`_chord`; the right-hand limit where the chord vanishes."""
    c = _chord(a, b, angle)
    if c == 0.0:
        return math.sqrt(a * b)
    return a * b * math.sin(angle) / c


@dataclass(frozen=True)
class TfccGeometry:
    l_r: float = 10e-3                     # |O_r D| = |O_r P|
    l_or: float = 2e-3                     # |O_t O_r|
    theta_d_init: float = math.radians(-15.0)   # initial angle D O_r O_t
    theta_p_init: float = math.radians(-40.0)   # initial angle P O_r O_t
    l_re: float = 10e-3                    # |O_r E|
    theta_ecu: float = math.radians(30.0)  # rotation at which the DRUL meets the ECU
    l_te: float | None = None              # |O_t E|; derived from continuity when None
    tension_threshold: float = 0.5e-3      # DRUL elongation treated as "taut", m
    l_od: float = field(init=False)
    l_op: float = field(init=False)

    def __post_init__(self):
        for name in ("l_r", "l_or", "l_re"):
            if not getattr(self, name) > 0:
                raise ConfigError("must be > 0", name)
        if self.l_te is not None and not self.l_te > 0:
            raise ConfigError("must be > 0", "l_te")
        if not self.tension_threshold > 0:
            raise ConfigError("must be > 0", "tension_threshold")
        # Rest lengths are the chords at theta22 = 0.
        object.__setattr__(self, "l_od", _chord(self.l_r, self.l_or, self.theta_d_init))
        object.__setattr__(self, "l_op", _chord(self.l_r, self.l_or, self.theta_p_init))
        if self.l_od == 0 or self.l_op == 0:
            raise ConfigError("rest ligament length is zero", "theta_d_init")
        jump = _pre_contact(self, self.theta_ecu) - _post_contact(self, self.theta_ecu)
        if abs(jump) > CONTINUITY_TOL:
            raise ConfigError(
                f"DRUL length jumps by {jump:.3e} m at the ECU contact angle; "
                "l_te is inconsistent with the other geometry",
                "l_te",
            )

    @property
    def te_length(self) -> float:
        """``|O_t E|``, the configured value or the one that makes the DRUL continuous."""
        if self.l_te is not None:
            return self.l_te
        return _chord(self.l_r, self.l_or, self.theta_d_init + self.theta_ecu) - abs(self.l_r - self.l_re)


def _pre_contact(geom, theta22):
    return _chord(geom.l_r, geom.l_or, geom.theta_d_init + theta22) - geom.l_od


def _post_contact(geom, theta22):
    return _chord(geom.l_r, geom.l_re, theta22 - geom.theta_ecu) + geom.te_length - geom.l_od


def drul_elongation(geom: TfccGeometry, theta22: float) -> float:
    if theta22 < geom.theta_ecu:
        return _pre_contact(geom, theta22)
    return _post_contact(geom, theta22)


def prul_elongation(geom: TfccGeometry, theta22: float) -> float:
    """PRUL elongation; negative values mean the ligament is slack."""
    return _chord(geom.l_r, geom.l_or, geom.theta_p_init + theta22) - geom.l_op


def drul_slope(geom: TfccGeometry, theta22: float, side: str = "auto") -> float:
    """Analytic d(DRUL)/d(theta22).

    ``side`` picks the branch at the contact angle: ``"pre"``, ``"post"`` or
    ``"auto"`` (post-contact for ``theta22 >= theta_ecu``).
    """
    post = theta22 >= geom.theta_ecu if side == "auto" else side == "post"
    if post:
        return _chord_slope(geom.l_r, geom.l_re, theta22 - geom.theta_ecu)
    return _chord_slope(geom.l_r, geom.l_or, geom.theta_d_init + theta22)


def prul_slope(geom: TfccGeometry, theta22: float) -> float:
    return _chord_slope(geom.l_r, geom.l_or, geom.theta_p_init + theta22)


def tfcc_curve(geom: TfccGeometry, theta22_range_deg, n: int, jobs: int = 1) -> SweepResult:
    """DRUL and PRUL elongation over a rotation range given in degrees."""
    thetas = degree_grid(theta22_range_deg[0], theta22_range_deg[1], n)
    pairs = parallel_map(lambda t: (drul_elongation(geom, t), prul_elongation(geom, t)),
                         list(thetas), jobs)
    drul, prul = (np.array(c) for c in zip(*pairs))
    return SweepResult(
        "theta22", thetas, {"drul": drul, "prul": prul},
        {"theta22": "rad", "drul": "m", "prul": "m"},
        provenance={"module": "tfcc"},
    )


def threshold_crossings(values, threshold: float) -> int:
    """Number of upward crossings of ``threshold`` in a sampled series."""
    above = np.asarray(values) >= threshold
    return int(np.count_nonzero(~above[:-1] & above[1:])) + int(above[0])
