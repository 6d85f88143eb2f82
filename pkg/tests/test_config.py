import dataclasses
import math
import warnings

import pytest
from hypothesis import given, settings, strategies as st

from arthrosim.config import (config_hash, default_config, dumps_config, load_config,
                              loads_config, replace_param, save_config)
from arthrosim.errors import CalibrationWarning, ConfigError

BUNDLES_ONLY = "\n".join(
    f"""[[bundles]]
id = {i}
direction = "{d}"
ag_mm = {ag}
bf_mm = {bf}
rest_len_mm = {fg}
angle_dag = {a}
angle_cbf = {c}
"""
    for i, d, ag, bf, fg, a, c in [
        (7, "ccw", 58.43, 47.58, 10.91, -1.02, 1.19), (3, "ccw", 18.51, 14.29, 4.53, -3.07, 7.12),
        (1, "ccw", 11.56, 5.83, 6.01, -7.14, 17.64), (6, "cw", 38.58, 42.77, 4.78, 0.0, 1.83),
        (5, "cw", 32.32, 38.31, 6.32, 0.0, 2.54), (4, "cw", 25.49, 32.94, 7.48, -1.70, 3.72),
        (2, "cw", 14.53, 23.14, 8.51, -5.49, 7.13),
    ]
)


def test_defaults_are_si(cfg):
    assert cfg.humeroradial.l_a == 0.012
    assert cfg.joint.theta21_max == math.radians(140.25)
    assert cfg.pronation.r_sec == 9.536784741144414e-3
    assert len(cfg.bundles) == 7 and [b.id for b in cfg.bundles] == list(range(1, 8))


def test_minimal_bundle_file_fills_defaults(tmp_path):
    p = tmp_path / "c.toml"
    p.write_text(BUNDLES_ONLY)
    c = load_config(p)
    assert len(c.bundles) == 7
    assert c.bundle(1).ag == 0.01156 and c.bundle(1).stiffness == 2e4
    assert c.humeroradial == default_config().humeroradial


def test_negative_stiffness_names_field():
    with pytest.raises(ConfigError) as err:
        loads_config("[humeroradial]\nk = -5.0\n")
    assert err.value.field == "humeroradial.k"
    assert str(err.value).startswith("humeroradial.k:")


def test_degree_input_converted_exactly():
    c = loads_config('angle_io_unit = "degrees"\n[humeroradial]\ntheta_s = 17.5\n')
    assert c.humeroradial.theta_s == 17.5 * math.pi / 180


def test_radian_input():
    c = loads_config('angle_io_unit = "radians"\n[humeroradial]\ntheta_s = 0.3\n')
    assert c.humeroradial.theta_s == 0.3
    assert c.angle_io_unit == "radians"


def test_mm_input_converted_by_1e_minus_3():
    c = loads_config("[tfcc]\nl_or_mm = 1.5\n")
    assert c.tfcc.l_or == 1.5e-3


@pytest.mark.parametrize("text, field", [
    ("[humeroradial]\nstiff = 1.0\n", "humeroradial.stiff"),
    ("colour = 1\n", "colour"),
    ("[elbow_actuation.triceps]\nf_t1 = 1.0\n", "elbow_actuation.triceps"),
    ("[mcl]\nl_oa = 6.0\n", "mcl.l_oa"),
])
def test_unknown_keys_rejected(text, field):
    with pytest.raises(ConfigError) as err:
        loads_config(text)
    assert err.value.field == field


def test_malformed_file():
    with pytest.raises(ConfigError, match="cannot parse"):
        loads_config("[humeroradial\n")


def test_wrong_types():
    with pytest.raises(ConfigError, match="expected a number"):
        loads_config('[pronation]\nf_t2 = "lots"\n')


@pytest.mark.parametrize("drop", [0, 3])
def test_bundle_count_enforced(drop):
    rows = BUNDLES_ONLY.split("[[bundles]]")[1:]
    del rows[drop]
    with pytest.raises(ConfigError, match="7 bundles"):
        loads_config("".join("[[bundles]]" + r for r in rows))


def test_duplicate_bundle_ids():
    text = BUNDLES_ONLY.replace("id = 2\n", "id = 3\n")
    with pytest.raises(ConfigError, match="distinct ids"):
        loads_config(text)


def test_missing_bundle_field():
    text = BUNDLES_ONLY.replace("ag_mm = 11.56\n", "")
    with pytest.raises(ConfigError, match="ag_mm"):
        loads_config(text)


def test_rest_length_mismatch_warns():
    with pytest.warns(CalibrationWarning, match="bundle 7"):
        loads_config(BUNDLES_ONLY.replace("rest_len_mm = 10.91", "rest_len_mm = 15.0"))


def test_defaults_do_not_warn():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        loads_config("")


def test_save_load_identity(tmp_path, cfg):
    p = tmp_path / "out.toml"
    save_config(cfg, p)
    assert load_config(p) == cfg


def test_radian_file_round_trip(cfg):
    c = dataclasses.replace(cfg, angle_io_unit="radians")
    text = dumps_config(c)
    assert "angle_io_unit = \"radians\"" in text
    assert loads_config(text) == c


SECTION_FIELDS = [
    ("humeroradial.l_a", 5e-3, 30e-3), ("humeroradial.theta_s", 0.1, 0.7),
    ("humeroradial.k", 1.0, 1e6), ("tfcc.l_or", 0.5e-3, 4e-3),
    ("pronation.r_sec", 1e-3, 0.04), ("supination.theta_n0", 0.05, 3.0),
    ("mcl.theta_a0", 0.1, 3.0), ("elbow_actuation.biceps.l_link", 0.03, 0.2),
    ("linkage.l5", 2.0e-3, 3.0e-3),
]


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(SECTION_FIELDS), st.floats(0, 1), st.sampled_from(["degrees", "radians"]))
def test_round_trip_property(field_spec, u, unit):
    path, lo, hi = field_spec
    c = replace_param(default_config(), path, lo + u * (hi - lo))
    c = dataclasses.replace(c, angle_io_unit=unit)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", CalibrationWarning)
        assert loads_config(dumps_config(c)) == c


def test_hash_stable_and_sensitive(cfg):
    assert config_hash(cfg) == config_hash(default_config())
    assert config_hash(cfg) == config_hash(dataclasses.replace(cfg, angle_io_unit="radians"))
    assert config_hash(cfg) != config_hash(replace_param(cfg, "pronation.f_t2", 700.0))


def test_replace_param_validates(cfg):
    with pytest.raises(ConfigError) as err:
        replace_param(cfg, "humeroradial.k", -1.0)
    assert err.value.field == "humeroradial.k"


def test_optional_fields_round_trip():
    c = loads_config("[elbow_actuation.biceps]\nr_stage_mm = 5.0\n")
    assert c.elbow_actuation.biceps.r_stage == 5e-3
    assert "r_stage_mm" in dumps_config(c)
    assert loads_config(dumps_config(c)) == c
