"""Deterministic scalar root finding, maximization and fitting."""

from __future__ import annotations

import math
from typing import Callable, NamedTuple

import numpy as np
from scipy.optimize import least_squares

from .errors import NumericError

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0


class Maximum(NamedTuple):
    argmax: float
    max: float
    at_boundary: bool


def _finite(f, x):
    y = float(f(x))
    if not math.isfinite(y):
        raise NumericError(f"non-finite function value {y!r} at x={x!r}")
    return y


def golden_section_max(f, a, b, tol=1e-12):
    """Golden-section refinement of a unimodal maximum inside ``(a, b)``.

    Returns ``(x, f(x))`` for the best interior point evaluated.  Stops once
    the bracket is narrower than ``tol`` or stops shrinking in floating point.
    """
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = _finite(f, c), _finite(f, d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            if not a < c < d:
                break
            fc = _finite(f, c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            if not c < d < b:
                break
            fd = _finite(f, d)
    return (c, fc) if fc >= fd else (d, fd)


def maximize_1d(f: Callable[[float], float], lo: float, hi: float,
                tol: float = 1e-12, samples: int = 512) -> Maximum:
    """Locate a maximum of ``f`` on ``[lo, hi]``.

    A uniform scan of ``samples`` points picks the best sample; golden-section
    search then refines inside the two neighbouring grid cells.  A maximum on
    an endpoint of ``[lo, hi]`` is flagged via ``at_boundary``.
    """
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if samples < 3:
        raise ValueError("samples must be >= 3")
    xs = np.linspace(lo, hi, samples)
    xs[0], xs[-1] = lo, hi
    ys = np.array([_finite(f, float(x)) for x in xs])
    i = int(np.argmax(ys))
    a = float(xs[max(i - 1, 0)])
    b = float(xs[min(i + 1, samples - 1)])
    x, y = golden_section_max(f, a, b, tol)
    if i == 0 and ys[0] >= y:
        return Maximum(float(lo), float(ys[0]), True)
    if i == samples - 1 and ys[-1] >= y:
        return Maximum(float(hi), float(ys[-1]), True)
    if y < ys[i]:
        x, y = float(xs[i]), float(ys[i])
    return Maximum(float(x), float(y), False)


def bisect_root(g: Callable[[float], float], lo: float, hi: float,
                xtol: float = 0.0, ytol: float = 0.0, max_iter: int = 400) -> float:
    """Bisection on a sign change of ``g`` over ``[lo, hi]``.

    Iterates until ``|g| <= ytol``, the bracket is narrower than ``xtol`` or
    the midpoint no longer moves; returns the bracket end with smaller ``|g|``.
    """
    glo, ghi = _finite(g, lo), _finite(g, hi)
    if glo == 0.0:
        return lo
    if ghi == 0.0:
        return hi
    if (glo > 0) == (ghi > 0):
        raise NumericError(f"no sign change: g({lo})={glo}, g({hi})={ghi}")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi) or abs(hi - lo) <= xtol:
            break
        gm = _finite(g, mid)
        if abs(gm) <= ytol:
            return mid
        if (gm > 0) == (glo > 0):
            lo, glo = mid, gm
        else:
            hi, ghi = mid, gm
    return lo if abs(glo) <= abs(ghi) else hi


def fit_scalar(target: float, g: Callable[[float], float], lo: float, hi: float,
               tol: float = 1e-9, samples: int = 512) -> float:
    """Find ``p`` in ``[lo, hi]`` with ``|g(p) - target| <= tol``.

    Works on a bracketing sign change of ``g - target``.  When the endpoints
    do not bracket, ``g`` is treated as unimodal and the bracket is taken
    between ``lo`` and the maximizer.
    """
    h = lambda p: _finite(g, p) - target
    hlo, hhi = h(lo), h(hi)
    if abs(hlo) <= tol:
        return lo
    if abs(hhi) <= tol:
        return hi
    if (hlo > 0) == (hhi > 0):
        peak = maximize_1d(g, lo, hi, samples=samples)
        if hlo < 0 and peak.max - target >= 0:
            hi = peak.argmax
        else:
            raise NumericError(
                f"target {target} not bracketed: g({lo})={hlo + target}, "
                f"g({hi})={hhi + target}, max g={peak.max}"
            )
    p = bisect_root(h, lo, hi, ytol=tol)
    if abs(h(p)) > tol:
        raise NumericError(f"bisection stalled at p={p} with residual {h(p)}")
    return p


def fit_least_squares(residuals: Callable[[np.ndarray], np.ndarray], x0, bounds=(-np.inf, np.inf)):
    """Bounded nonlinear least squares; returns ``(x, residual_vector)``."""
    sol = least_squares(residuals, np.asarray(x0, dtype=float), bounds=bounds,
                        method="trf", xtol=1e-15, ftol=1e-15, gtol=1e-15)
    if not sol.success:
        raise NumericError(f"least squares failed: {sol.message}")
    return sol.x, sol.fun
