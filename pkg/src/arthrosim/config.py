"""Model configuration: TOML schema, defaults, validation and round-tripping.

Files carry lengths in mm (keys ending in ``_mm``) and angles in the unit
named by ``angle_io_unit``.  User files are merged key by key over the
packaged defaults; ``[[bundles]]``, when present, replaces the whole table.
"""

from __future__ import annotations

import dataclasses
import hashlib
import sys
from dataclasses import dataclass, field
from decimal import Decimal
from functools import lru_cache
from importlib import resources
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

import tomli_w

from . import units
from .actuation import ElbowActuationGeometry, PronationGeometry, SupinationGeometry
from .errors import ConfigError
from .humeroradial import HumeroradialGeometry
from .iom import ForearmLinkage, IomBundle, check_rest_consistency
from .joint import JointLimits
from .mcl import MclGeometry
from .tfcc import TfccGeometry

ANGLE_UNITS = ("degrees", "radians")

LENGTH, ANGLE, NUMBER, TEXT, INT = "length", "angle", "number", "text", "int"

# Section -> (type, {field: kind}).  Length fields appear in files as <field>_mm.
SCHEMA = {
    "joint": (JointLimits, {
        "theta21_max": ANGLE, "theta22_min": ANGLE, "theta22_max": ANGLE,
        "theta22_reference": ANGLE,
    }),
    "humeroradial": (HumeroradialGeometry, {
        "l_a": LENGTH, "r": LENGTH, "gamma": ANGLE, "theta_s": ANGLE,
        "k": NUMBER, "l_e": LENGTH,
    }),
    "tfcc": (TfccGeometry, {
        "l_r": LENGTH, "l_or": LENGTH, "theta_d_init": ANGLE, "theta_p_init": ANGLE,
        "l_re": LENGTH, "theta_ecu": ANGLE, "l_te": LENGTH, "tension_threshold": LENGTH,
    }),
    "linkage": (ForearmLinkage, {
        "l1": LENGTH, "l3": LENGTH, "l4": LENGTH, "l5": LENGTH, "theta_d_rest": ANGLE,
    }),
    "mcl": (MclGeometry, {
        "l_oa": LENGTH, "l_op_ecc": LENGTH, "r_ins": LENGTH,
        "theta_a0": ANGLE, "theta_p0": ANGLE, "strain_mode": TEXT,
    }),
    "elbow_actuation.brachialis": (ElbowActuationGeometry, {
        "r_routing": LENGTH, "l_link": LENGTH, "l_offset": LENGTH, "f_t1": NUMBER,
        "f_text": NUMBER, "r_ext": LENGTH, "r_stage": LENGTH,
    }),
    "pronation": (PronationGeometry, {
        "r_sec": LENGTH, "theta_m0": ANGLE, "theta_tilt": ANGLE, "f_t2": NUMBER,
    }),
    "supination": (SupinationGeometry, {
        "r_sec": LENGTH, "theta_n0": ANGLE, "r_t": LENGTH, "f_t3": NUMBER, "f_t4": NUMBER,
    }),
}
SCHEMA["elbow_actuation.biceps"] = SCHEMA["elbow_actuation.brachialis"]

BUNDLE_SCHEMA = {
    "id": INT, "direction": TEXT, "ag": LENGTH, "bf": LENGTH, "rest_len": LENGTH,
    "angle_dag": ANGLE, "angle_cbf": ANGLE, "stiffness": NUMBER, "name": TEXT,
}

TOP_LEVEL = {"defaults_version", "angle_io_unit", "joint", "humeroradial", "tfcc", "linkage",
             "bundles", "mcl", "elbow_actuation", "pronation", "supination"}


@dataclass(frozen=True)
class ElbowActuation:
    brachialis: ElbowActuationGeometry
    biceps: ElbowActuationGeometry


@dataclass(frozen=True)
class ModelConfig:
    joint: JointLimits
    humeroradial: HumeroradialGeometry
    tfcc: TfccGeometry
    linkage: ForearmLinkage
    bundles: tuple[IomBundle, ...]
    mcl: MclGeometry
    elbow_actuation: ElbowActuation
    pronation: PronationGeometry
    supination: SupinationGeometry
    angle_io_unit: str = "degrees"
    defaults_version: int = field(default=0, compare=False)

    def __post_init__(self):
        if self.angle_io_unit not in ANGLE_UNITS:
            raise ConfigError(f"must be one of {ANGLE_UNITS}", "angle_io_unit")
        ids = sorted(b.id for b in self.bundles)
        if ids != list(range(1, 8)):
            raise ConfigError(f"need exactly 7 bundles with distinct ids 1-7, got {ids}", "bundles")

    def section(self, name: str):
        obj = self
        for part in name.split("."):
            obj = getattr(obj, part)
        return obj

    def bundle(self, bundle_id: int) -> IomBundle:
        return next(b for b in self.bundles if b.id == bundle_id)


# ---------------------------------------------------------------- reading

def _file_key(name: str, kind: str) -> str:
    return f"{name}_mm" if kind == LENGTH else name


def _to_internal(value, kind, angle_unit, path):
    if kind == TEXT:
        if not isinstance(value, str):
            raise ConfigError("expected a string", path)
        return value
    if kind == INT:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError("expected an integer", path)
        return value
    if isinstance(value, bool) or not isinstance(value, (int, Decimal, float)):
        raise ConfigError("expected a number", path)
    if isinstance(value, Decimal) and not value.is_finite():
        raise ConfigError("must be finite", path)
    if kind == LENGTH:
        return units.mm_to_m(value)
    if kind == ANGLE and angle_unit == "degrees":
        return units.deg_to_rad(value)
    return float(value)


def _read_table(table, fields, angle_unit, prefix) -> dict:
    if not isinstance(table, dict):
        raise ConfigError("expected a table", prefix)
    known = {_file_key(n, k): (n, k) for n, k in fields.items()}
    out = {}
    for key, value in table.items():
        if key not in known:
            raise ConfigError("unknown key", f"{prefix}.{key}")
        name, kind = known[key]
        out[name] = _to_internal(value, kind, angle_unit, f"{prefix}.{key}")
    return out


def _internal_dict(raw: dict) -> dict:
    """Translate one parsed file into ``{section: {field: SI value}}``."""
    for key in raw:
        if key not in TOP_LEVEL:
            raise ConfigError("unknown key", key)
    angle_unit = raw.get("angle_io_unit", "degrees")
    if angle_unit not in ANGLE_UNITS:
        raise ConfigError(f"must be one of {ANGLE_UNITS}", "angle_io_unit")
    out: dict = {"angle_io_unit": angle_unit}
    if "defaults_version" in raw:
        out["defaults_version"] = raw["defaults_version"]
    elbow = raw.get("elbow_actuation", {})
    if not isinstance(elbow, dict):
        raise ConfigError("expected a table", "elbow_actuation")
    for key in elbow:
        if key not in ("brachialis", "biceps"):
            raise ConfigError("unknown key", f"elbow_actuation.{key}")
    for section, (_, fields) in SCHEMA.items():
        if section.startswith("elbow_actuation."):
            table = elbow.get(section.split(".", 1)[1])
        else:
            table = raw.get(section)
        if table is not None:
            out[section] = _read_table(table, fields, angle_unit, section)
    if "bundles" in raw:
        rows = raw["bundles"]
        if not isinstance(rows, list):
            raise ConfigError("expected an array of tables", "bundles")
        out["bundles"] = [_read_table(r, BUNDLE_SCHEMA, angle_unit, f"bundles[{i}]")
                          for i, r in enumerate(rows)]
    return out


def _build(section, cls, values):
    try:
        return cls(**values)
    except ConfigError as exc:
        sub = exc.field or "?"
        raise ConfigError(exc.message, f"{section}.{sub}") from None
    except TypeError as exc:
        raise ConfigError(f"missing or invalid field ({exc})", section) from None


def _merge(base: dict, user: dict) -> dict:
    merged = {k: (dict(v) if isinstance(v, dict) else v) for k, v in base.items()}
    for key, value in user.items():
        if isinstance(value, dict):
            merged.setdefault(key, {}).update(value)
        else:
            merged[key] = value
    return merged


def _assemble(values: dict) -> ModelConfig:
    built = {}
    for section, (cls, _) in SCHEMA.items():
        built[section] = _build(section, cls, values.get(section, {}))
    required = ("ag", "bf", "rest_len", "angle_dag", "angle_cbf", "id", "direction")
    bundles = []
    for i, row in enumerate(values.get("bundles", [])):
        for key in required:
            if key not in row:
                raise ConfigError("required", f"bundles[{i}].{_file_key(key, BUNDLE_SCHEMA[key])}")
        bundles.append(_build(f"bundles[{i}]", IomBundle, row))
    bundles.sort(key=lambda b: b.id)
    return ModelConfig(
        joint=built["joint"],
        humeroradial=built["humeroradial"],
        tfcc=built["tfcc"],
        linkage=built["linkage"],
        bundles=tuple(bundles),
        mcl=built["mcl"],
        elbow_actuation=ElbowActuation(built["elbow_actuation.brachialis"],
                                       built["elbow_actuation.biceps"]),
        pronation=built["pronation"],
        supination=built["supination"],
        angle_io_unit=values.get("angle_io_unit", "degrees"),
        defaults_version=values.get("defaults_version", 0),
    )


def _parse(text: str, origin: str) -> dict:
    try:
        return tomllib.loads(text, parse_float=Decimal)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"cannot parse {origin}: {exc}") from None


@lru_cache(maxsize=1)
def _default_values() -> dict:
    text = resources.files("arthrosim").joinpath("data/defaults.toml").read_text(encoding="utf-8")
    return _internal_dict(_parse(text, "packaged defaults"))


def default_config() -> ModelConfig:
    return _assemble(_default_values())


def loads_config(text: str, origin: str = "<string>", check_table: bool = True) -> ModelConfig:
    user = _internal_dict(_parse(text, origin))
    user.setdefault("defaults_version", _default_values().get("defaults_version", 0))
    config = _assemble(_merge(_default_values(), user))
    if check_table:
        check_rest_consistency(config.linkage, config.bundles)
    return config


def load_config(path) -> ModelConfig:
    """Read, merge over defaults and validate a TOML configuration file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    return loads_config(text, str(path))


# ---------------------------------------------------------------- writing

def _to_file(value, kind, angle_unit):
    if kind in (TEXT, INT):
        return value
    if kind == LENGTH:
        return Decimal(units.m_to_mm(value))
    if kind == ANGLE and angle_unit == "degrees":
        return Decimal(units.rad_to_deg(value))
    return Decimal(units.plain_float(value))


def _write_table(obj, fields, angle_unit) -> dict:
    out = {}
    for name, kind in fields.items():
        value = getattr(obj, name)
        if value is None:
            continue
        out[_file_key(name, kind)] = _to_file(value, kind, angle_unit)
    return out


def config_to_dict(config: ModelConfig) -> dict:
    unit = config.angle_io_unit
    doc: dict = {"defaults_version": config.defaults_version, "angle_io_unit": unit}
    for section, (_, fields) in SCHEMA.items():
        table = _write_table(config.section(section), fields, unit)
        if section.startswith("elbow_actuation."):
            doc.setdefault("elbow_actuation", {})[section.split(".", 1)[1]] = table
        else:
            doc[section] = table
    doc["bundles"] = [_write_table(b, BUNDLE_SCHEMA, unit) for b in config.bundles]
    return doc


def dumps_config(config: ModelConfig) -> str:
    return tomli_w.dumps(config_to_dict(config))


def save_config(config: ModelConfig, path) -> None:
    Path(path).write_bytes(dumps_config(config).encode("utf-8"))


def config_hash(config: ModelConfig) -> str:
    """Short content hash, stable across angle_io_unit choices."""
    canonical = dataclasses.replace(config, angle_io_unit="radians")
    return hashlib.sha256(dumps_config(canonical).encode("utf-8")).hexdigest()[:16]


def get_param(config: ModelConfig, path: str):
    section, _, name = path.rpartition(".")
    return getattr(config.section(section), name)


def replace_param(config: ModelConfig, path: str, value) -> ModelConfig:
    """Copy of ``config`` with the dotted parameter ``path`` set to an SI value."""
    section, _, name = path.rpartition(".")
    if section == "":
        raise ValueError(f"parameter path {path!r} needs a section")
    target = config.section(section)
    updated = _build(section, type(target), {**_init_values(target), name: value})
    if section.startswith("elbow_actuation."):
        muscle = section.split(".", 1)[1]
        elbow = dataclasses.replace(config.elbow_actuation, **{muscle: updated})
        return dataclasses.replace(config, elbow_actuation=elbow)
    return dataclasses.replace(config, **{section: updated})


def _init_values(obj) -> dict:
    return {f.name: getattr(obj, f.name) for f in dataclasses.fields(obj) if f.init}
