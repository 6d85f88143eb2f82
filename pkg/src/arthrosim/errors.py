"""Exception hierarchy shared by every analysis module."""


class ArthrosimError(Exception):
    """Base class for all library errors."""


class ConfigError(ArthrosimError):
    """A configuration value is missing, malformed or violates a constraint.

    ``field`` holds the dotted path of the offending entry when known,
    e.g. ``"humeroradial.k"``.
    """

    def __init__(self, message, field=None):
        self.field = field
        self.message = message
        super().__init__(f"{field}: {message}" if field else message)


class GeometryError(ArthrosimError):
    """A geometric construction cannot be closed for the requested input."""


class NumericError(ArthrosimError):
    """A numeric routine could not produce a result (bracket, non-finite value)."""


class CalibrationWarning(UserWarning):
    """Model geometry reproduces a reference value only approximately."""
