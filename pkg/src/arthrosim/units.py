"""Boundary unit conversions.

Internally everything is SI (m, N, N*m, rad).  Files use mm and either
degrees or radians.  Conversions go through :mod:`decimal` so that a value
written by :func:`m_to_mm` / :func:`rad_to_deg` reads back to the identical
float.
"""

from __future__ import annotations

import math
from decimal import Decimal, localcontext

# 60 significant digits, far beyond double precision.
_PI = Decimal("3.14159265358979323846264338327950288419716939937510582097494")
_PREC = 60


def _to_decimal(value) -> Decimal:
    if isinstance(value, Decimal):
        return value
    if isinstance(value, float):
        return Decimal(value)  # exact binary value
    return Decimal(str(value))


def mm_to_m(value) -> float:
    """Exact ×10⁻³ scaling, correctly rounded once."""
    with localcontext() as ctx:
        ctx.prec = _PREC
        return float(_to_decimal(value) / 1000)


def deg_to_rad(value) -> float:
    with localcontext() as ctx:
        ctx.prec = _PREC
        return float(_to_decimal(value) * _PI / 180)


def _shortest(exact: Decimal, back) -> str:
    target = back(exact)
    for digits in range(1, 40):
        with localcontext() as ctx:
            ctx.prec = digits
            candidate = +exact
        if back(candidate) == target:
            return _plain(candidate)
    return _plain(exact)


def _plain(d: Decimal) -> str:
    text = format(d, "f") if -7 < d.adjusted() < 16 else format(d, "e")
    if "e" not in text and "." not in text:
        text += ".0"
    return text


def m_to_mm(value: float) -> str:
    """Shortest decimal mm string that :func:`mm_to_m` maps back to ``value``."""
    with localcontext() as ctx:
        ctx.prec = _PREC
        exact = Decimal(value) * 1000
    return _shortest(exact, mm_to_m)


def rad_to_deg(value: float) -> str:
    """Shortest decimal degree string that :func:`deg_to_rad` maps back to ``value``."""
    with localcontext() as ctx:
        ctx.prec = _PREC
        exact = Decimal(value) * 180 / _PI
    return _shortest(exact, deg_to_rad)


def plain_float(value: float) -> str:
    return repr(float(value))


# Unit tags used in SweepResult columns and CSV headers.  Each SI tag maps to
# the tag written at file boundaries and the factor applied on output.
BOUNDARY_UNITS = {
    "m": ("mm", 1e3),
    "rad": ("deg", 180.0 / math.pi),
    "N": ("N", 1.0),
    "N*m": ("Nm", 1.0),
    "N/m": ("N/m", 1.0),
    "1": ("1", 1.0),
}

# Tags accepted when reading files: tag -> (dimension, factor to SI).
READ_UNITS = {
    "m": ("length", 1.0),
    "mm": ("length", 1e-3),
    "rad": ("angle", 1.0),
    "deg": ("angle", math.pi / 180.0),
    "N": ("force", 1.0),
    "Nm": ("torque", 1.0),
    "N*m": ("torque", 1.0),
    "N/m": ("stiffness", 1.0),
    "1": ("dimensionless", 1.0),
    "%": ("dimensionless", 0.01),
}

SI_OF_DIMENSION = {
    "length": "m",
    "angle": "rad",
    "force": "N",
    "torque": "N*m",
    "stiffness": "N/m",
    "dimensionless": "1",
}


def to_si(values, unit: str):
    """Return ``(values_in_si, si_tag)`` for a tag from :data:`READ_UNITS`."""
    try:
        dimension, factor = READ_UNITS[unit]
    except KeyError:
        raise ValueError(f"unknown unit tag {unit!r}") from None
    return values * factor if factor != 1.0 else values, SI_OF_DIMENSION[dimension]
