"""Joint angle conventions and ranges of motion."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigError


@dataclass(frozen=True)
class JointLimits:
    """Ranges of motion.

    ``theta22_min``/``theta22_max`` are in the reporting frame of the
    performance table.  Analysis models measure forearm rotation from
    ``theta22_reference`` (by default the fully supinated end), positive
    towards pronation, so their working range is
    ``[theta22_min - ref, theta22_max - ref]``.
    """

    theta21_max: float = math.radians(140.25)
    theta22_min: float = math.radians(-60.0)
    theta22_max: float = math.radians(51.5)
    theta22_reference: float = math.radians(-60.0)

    def __post_init__(self):
        if not 0 <= self.theta21_max <= math.pi:
            raise ConfigError("must lie in [0, 180] deg", "theta21_max")
        if not self.theta22_min <= self.theta22_max:
            raise ConfigError("must not exceed theta22_max", "theta22_min")

    @property
    def theta21_range(self) -> tuple[float, float]:
        return 0.0, self.theta21_max

    @property
    def theta22_model_range(self) -> tuple[float, float]:
        return (self.theta22_min - self.theta22_reference,
                self.theta22_max - self.theta22_reference)

    def to_model(self, theta22: float) -> float:
        return theta22 - self.theta22_reference


@dataclass(frozen=True)
class JointState:
    theta21: float  # elbow flexion, 0 = full extension
    theta22: float  # forearm rotation in the reporting frame

    def check(self, limits: JointLimits) -> "JointState":
        if not 0 <= self.theta21 <= limits.theta21_max:
            raise ValueError(f"theta21={math.degrees(self.theta21):.3f} deg outside the elbow ROM")
        if not limits.theta22_min <= self.theta22 <= limits.theta22_max:
            raise ValueError(f"theta22={math.degrees(self.theta22):.3f} deg outside the forearm ROM")
        return self
