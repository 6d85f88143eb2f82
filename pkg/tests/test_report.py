import pytest

from arthrosim.config import loads_config
from arthrosim.report import report, summarize


def test_default_summary(cfg):
    s = summarize(cfg)
    assert s.elbow_torque_range[0] == pytest.approx(-11.25, abs=1e-12)
    assert s.flexion_peak >= 24.0
    assert s.forearm_torque_range == pytest.approx((-14.0, 7.8), rel=1e-9)
    assert s.prul_max <= 2e-3
    assert not s.single_angle


def test_table_rows(cfg):
    lines = report(cfg).splitlines()
    elbow = next(l for l in lines if l.startswith("Elbow"))
    forearm = next(l for l in lines if l.startswith("Forearm"))
    assert "0 to 140.25" in elbow and "-11.25 to 24.25" in elbow
    assert "-60 to 51.5" in forearm and "-14 to 7.8" in forearm
    assert all(l == l.rstrip() for l in lines)


def test_collapsed_range_reports_single_angle():
    c = loads_config("[joint]\ntheta21_max = 0.0\ntheta22_min = -60.0\ntheta22_max = -60.0\n")
    s = summarize(c)
    assert s.single_angle
    text = report(c)
    assert "single angle" in text
    assert next(l for l in text.splitlines() if l.startswith("Elbow")).split()[1] == "0"
