"""Residuals between model curves and digitized experimental points."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .sweep import SweepResult


@dataclass(frozen=True, eq=False)
class ExperimentRecord:
    """Experimental points in SI units, with the unit tags they were converted to."""

    source: str
    abscissa: np.ndarray
    abscissa_unit: str
    values: np.ndarray
    value_unit: str
    applied_force: float | None = None   # lateral test force, N

    def __post_init__(self):
        x = np.asarray(self.abscissa, dtype=float)
        y = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "abscissa", x)
        object.__setattr__(self, "values", y)
        if x.ndim != 1 or x.shape != y.shape:
            raise ValueError("abscissa and values must be 1-D with equal lengths")
        if x.size == 0:
            raise ValueError("experiment has no points")

    @classmethod
    def from_csv(cls, source, column: str | None = None, label: str | None = None) -> "ExperimentRecord":
        """Read an experiment CSV in the same layout :class:`SweepResult` writes.

        ``# source:`` and ``# applied_force_N:`` comment lines are picked up
        when present.  Without ``column`` the first value column is used.
        """
        table = SweepResult.from_csv(source)
        name = column or next(iter(table.series))
        if name not in table.series:
            raise ValueError(f"experiment has no column {name!r}; found {', '.join(table.series)}")
        force = table.provenance.get("applied_force_N")
        return cls(
            source=label or table.provenance.get("source", str(source)),
            abscissa=table.abscissa,
            abscissa_unit=table.units[table.abscissa_name],
            values=table.series[name],
            value_unit=table.units[name],
            applied_force=float(force) if force is not None else None,
        )


@dataclass(frozen=True, eq=False)
class ComparisonReport:
    rmse: float
    max_abs_dev: float
    n_points: int
    residuals: np.ndarray      # experiment minus model, at the experiment abscissae
    abscissa: np.ndarray
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_abs_dev <= self.tolerance

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return (f"{verdict}: n={self.n_points} rmse={self.rmse:.9g} "
                f"max_abs_dev={self.max_abs_dev:.9g} tolerance={self.tolerance:.9g}")

    def to_result(self, abscissa_name: str, abscissa_unit: str, value_unit: str) -> SweepResult:
        return SweepResult(abscissa_name, self.abscissa, {"residual": self.residuals},
                           {abscissa_name: abscissa_unit, "residual": value_unit},
                           notes=(self.summary(),))


def compare(model: SweepResult, series: str, experiment: ExperimentRecord,
            tolerance: float) -> ComparisonReport:
    """Interpolate ``model[series]`` linearly onto the experiment and summarize residuals."""
    if not tolerance >= 0:
        raise ValueError("tolerance must be >= 0")
    if series not in model.series:
        raise ValueError(f"model has no series {series!r}; found {', '.join(model.series)}")
    x_unit = model.units[model.abscissa_name]
    if experiment.abscissa_unit != x_unit:
        raise ValueError(f"unit mismatch: experiment abscissa in {experiment.abscissa_unit}, model in {x_unit}")
    if experiment.value_unit != model.units[series]:
        raise ValueError(f"unit mismatch: experiment values in {experiment.value_unit}, "
                         f"model series in {model.units[series]}")
    xp, fp = model.abscissa, model.series[series]
    if xp[0] > xp[-1]:
        xp, fp = xp[::-1], fp[::-1]
    x = experiment.abscissa
    if x.min() < xp[0] or x.max() > xp[-1]:
        raise ValueError(f"span mismatch: experiment covers [{x.min():.9g}, {x.max():.9g}], "
                         f"model covers [{xp[0]:.9g}, {xp[-1]:.9g}]")
    residuals = experiment.values - np.interp(x, xp, fp)
    if not np.all(np.isfinite(residuals)):
        raise ValueError("model series is undefined at some experiment abscissae")
    max_abs = float(np.abs(residuals).max())
    # Rounding can push the rms of equal residuals one ulp above their magnitude.
    rmse = min(math.sqrt(float(np.mean(residuals ** 2))), max_abs)
    return ComparisonReport(
        rmse=rmse,
        max_abs_dev=max_abs,
        n_points=int(x.size),
        residuals=residuals,
        abscissa=x,
        tolerance=float(tolerance),
    )
