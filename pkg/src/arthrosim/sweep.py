"""Sampled curves and their CSV form.

A :class:`SweepResult` stores SI values.  On output every column is converted
to its boundary unit (m -> mm, rad -> deg) and the boundary unit is appended
to the column name, so ``delta_ls`` in metres is written as ``delta_ls_mm``.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from .units import BOUNDARY_UNITS, READ_UNITS, to_si

SIG_DIGITS = 9


def parallel_map(func: Callable, items: Sequence, jobs: int = 1) -> list:
    """``[func(x) for x in items]``, optionally on a thread pool; order is kept."""
    if jobs <= 1 or len(items) < 2:
        return [func(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items))


def degree_grid(lo_deg: float, hi_deg: float, n: int) -> np.ndarray:
    """``n`` evenly spaced angles in radians, with the grid laid out in degrees.

    Laying the grid out in degrees keeps round angles such as 90 deg exact.
    """
    return np.radians(closed_grid(lo_deg, hi_deg, n))


def closed_grid(lo: float, hi: float, n: int) -> np.ndarray:
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        if lo != hi:
            raise ValueError("a single-sample sweep needs lo == hi")
        return np.array([float(lo)])
    if not hi > lo:
        raise ValueError(f"sweep range must increase, got [{lo}, {hi}]")
    xs = np.linspace(lo, hi, n)
    xs[-1] = hi
    return xs


def _fmt(value: float) -> str:
    if math.isnan(value):
        return "nan"
    text = f"{value:.{SIG_DIGITS}g}"
    return "0" if text == "-0" else text


@dataclass(frozen=True, eq=False)
class SweepResult:
    abscissa_name: str
    abscissa: np.ndarray
    series: dict[str, np.ndarray]
    units: dict[str, str]
    provenance: dict[str, str] = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        x = np.asarray(self.abscissa, dtype=float)
        object.__setattr__(self, "abscissa", x)
        cols = {k: np.asarray(v, dtype=float) for k, v in self.series.items()}
        object.__setattr__(self, "series", cols)
        if x.ndim != 1 or x.size == 0:
            raise ValueError("abscissa must be a non-empty 1-D sequence")
        for name, col in cols.items():
            if col.shape != x.shape:
                raise ValueError(f"series {name!r} has {col.size} values, abscissa has {x.size}")
        if x.size > 1:
            steps = np.diff(x)
            if not (np.all(steps > 0) or np.all(steps < 0)):
                raise ValueError("abscissa must be strictly monotone")
        for name in (self.abscissa_name, *cols):
            if name not in self.units:
                raise ValueError(f"missing unit tag for column {name!r}")

    def __getitem__(self, name: str) -> np.ndarray:
        if name == self.abscissa_name:
            return self.abscissa
        return self.series[name]

    @property
    def columns(self) -> list[str]:
        return [self.abscissa_name, *self.series]

    def csv_header(self, angle_unit: str = "degrees") -> list[str]:
        return [boundary_name(c, self.units[c], angle_unit) for c in self.columns]

    def to_csv(self, target=None, angle_unit: str = "degrees") -> str:
        """Serialize; writes to ``target`` (path or text stream) when given.

        Angles are written in degrees unless ``angle_unit="radians"``.
        """
        buf = io.StringIO()
        for key, value in self.provenance.items():
            buf.write(f"# {key}: {value}\r\n")
        for note in self.notes:
            buf.write(f"# {note}\r\n")
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(self.csv_header(angle_unit))
        tags, factors = zip(*(boundary_unit(self.units[c], angle_unit) for c in self.columns))
        buf.write("# units: " + ",".join(tags) + "\r\n")
        data = [self.abscissa, *self.series.values()]
        for i in range(self.abscissa.size):
            writer.writerow([_fmt(col[i] * f) for col, f in zip(data, factors)])
        text = buf.getvalue()
        if isinstance(target, (str, Path)):
            Path(target).write_bytes(text.encode("utf-8"))
        elif target is not None:
            target.write(text)
        return text

    @classmethod
    def from_csv(cls, source) -> "SweepResult":
        text = _read_text(source)
        comments, header, rows = _split_csv(text)
        unit_tags = _unit_row(comments, len(header))
        provenance = {}
        for line in comments:
            if ":" in line and not line.startswith("units:"):
                key, _, value = line.partition(":")
                provenance[key.strip()] = value.strip()
        names, units, cols = [], {}, []
        for j, (col_name, tag) in enumerate(zip(header, unit_tags)):
            values = np.array([float(r[j]) for r in rows])
            si_values, si_tag = to_si(values, tag)
            base = strip_unit_suffix(col_name, tag)
            names.append(base)
            units[base] = si_tag
            cols.append(si_values)
        return cls(names[0], cols[0], dict(zip(names[1:], cols[1:])), units, provenance)


def boundary_unit(si_unit: str, angle_unit: str = "degrees") -> tuple[str, float]:
    if si_unit == "rad" and angle_unit == "radians":
        return "rad", 1.0
    return BOUNDARY_UNITS[si_unit]


def boundary_name(name: str, si_unit: str, angle_unit: str = "degrees") -> str:
    tag = boundary_unit(si_unit, angle_unit)[0]
    return name if tag == "1" else f"{name}_{tag}"


def strip_unit_suffix(name: str, tag: str) -> str:
    suffix = f"_{tag}"
    return name[: -len(suffix)] if tag != "1" and name.endswith(suffix) else name


def _read_text(source) -> str:
    if isinstance(source, (str, Path)) and Path(source).exists():
        return Path(source).read_text(encoding="utf-8")
    if hasattr(source, "read"):
        return source.read()
    return str(source)


def _split_csv(text: str):
    comments, body = [], []
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            comments.append(stripped[1:].strip())
        else:
            body.append(line)
    rows = list(csv.reader(body))
    if not rows:
        raise ValueError("CSV has no header row")
    return comments, rows[0], rows[1:]


def _unit_row(comments: Iterable[str], ncols: int) -> list[str]:
    for line in comments:
        if line.startswith("units:"):
            tags = [t.strip() for t in line[len("units:"):].split(",")]
            if len(tags) != ncols:
                raise ValueError(f"units row has {len(tags)} tags for {ncols} columns")
            for t in tags:
                if t not in READ_UNITS:
                    raise ValueError(f"unknown unit tag {t!r}")
            return tags
    raise ValueError("CSV lacks a '# units:' comment row")
