"""Statics and stability models of a tendon-driven elbow and forearm."""

from .config import ModelConfig, default_config, load_config, save_config
from .errors import ArthrosimError, CalibrationWarning, ConfigError, GeometryError, NumericError
from .joint import JointLimits, JointState
from .sweep import SweepResult

__version__ = "0.1.0"

__all__ = [
    "ArthrosimError", "CalibrationWarning", "ConfigError", "GeometryError", "JointLimits",
    "JointState", "ModelConfig", "NumericError", "SweepResult", "default_config",
    "load_config", "save_config",
]
