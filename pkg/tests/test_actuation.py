import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from arthrosim.actuation import (ElbowActuationGeometry, PronationGeometry, SupinationGeometry,
                                 extension_torque, flexion_stage, flexion_torque, pronation_torque,
                                 supination_torque, torque_envelope)
from arthrosim.config import loads_config
from arthrosim.errors import ConfigError
from arthrosim.numerics import maximize_1d

ROM21 = math.radians(140.25)


@pytest.fixture(scope="module")
def elbow(cfg):
    return cfg.elbow_actuation


def combined(elbow, t):
    return flexion_torque(elbow.brachialis, t) + flexion_torque(elbow.biceps, t)


def test_gamma_identity(elbow):
    # R = L sin(gamma) + l cos(gamma) is equivalent to the arcsin/arctan form.
    for g in (elbow.brachialis, elbow.biceps):
        assert g.l_link * math.sin(g.gamma) + g.l_offset * math.cos(g.gamma) == pytest.approx(
            g.r_routing, rel=1e-14)


def test_stage_one_constant_arm(elbow):
    g = elbow.brachialis
    for t in np.linspace(0, g.gamma * 0.999, 7):
        assert flexion_stage(g, t) == 1
        assert flexion_torque(g, t) == 250 * g.r_routing


def test_stage_three_harmonic_form(elbow):
    # l cos(theta21) + L sin(theta21) = sqrt(L^2 + l^2) sin(theta21 + atan(l / L))
    g = elbow.biceps
    h = math.hypot(g.l_link, g.l_offset)
    for t in np.linspace(g.gamma + 0.01, ROM21, 9):
        assert flexion_torque(g, t) == pytest.approx(g.f_t1 * h * math.sin(t + math.atan(g.l_offset / g.l_link)),
                                                     rel=1e-13)


def test_stage_boundary_continuity(elbow):
    for g in (elbow.brachialis, elbow.biceps):
        assert max(abs(j) for j in g.stage_jumps()) <= 1e-9
        b = g.gamma
        before, at, after = (flexion_torque(g, x) for x in (np.nextafter(b, 0), b, np.nextafter(b, 4)))
        assert abs(before - at) <= 1e-9 and abs(after - at) <= 1e-9


def test_inconsistent_stage_radius_rejected(elbow):
    with pytest.raises(ConfigError) as err:
        dataclasses.replace(elbow.brachialis, r_stage=elbow.brachialis.r_routing)
    assert err.value.field == "r_stage"
    dataclasses.replace(elbow.brachialis, r_stage=elbow.brachialis.l_offset)


def test_invalid_routing():
    with pytest.raises(ConfigError):
        ElbowActuationGeometry(0.1, 0.045, 0.01)          # R beyond sqrt(L^2 + l^2)
    with pytest.raises(ConfigError, match="gamma"):
        ElbowActuationGeometry(0.005, 0.045, 0.01)        # R < l gives a negative stage angle


def test_combined_peak(elbow):
    peak = maximize_1d(lambda t: combined(elbow, t), 0, ROM21)
    assert peak.max >= 24.0 and not peak.at_boundary
    assert combined(elbow, 0.0) < peak.max and combined(elbow, ROM21) < peak.max


def test_decreasing_toward_both_ends_in_stage_three(elbow):
    g = elbow.biceps
    t = np.linspace(g.gamma + 1e-6, ROM21, 400)
    y = np.array([flexion_torque(g, x) for x in t])
    i = int(np.argmax(y))
    assert 0 < i < y.size - 1
    assert np.all(np.diff(y[:i + 1]) > 0) and np.all(np.diff(y[i:]) < 0)


def test_extension_constant():
    g = ElbowActuationGeometry(20e-3, 45e-3, 10e-3, f_text=250.0, r_ext=0.045)
    values = {extension_torque(g, t) for t in np.linspace(0, ROM21, 50)}
    assert values == {250.0 * 0.045}
    assert abs(250.0 * 0.045 - 11.25) <= 1e-12
    assert extension_torque(dataclasses.replace(g, f_text=0.0), 1.0) == 0.0


def test_pronation_extremes():
    g = PronationGeometry()
    assert pronation_torque(g, g.theta_m0) == 2 * g.f_t2 * g.r_sec
    assert pronation_torque(g, g.theta_m0 - math.pi / 2) == pytest.approx(g.f_t2 * g.r_sec, rel=1e-15)
    peak = maximize_1d(lambda t: pronation_torque(g, t), 0, math.radians(111.5), tol=1e-14)
    assert peak.argmax == pytest.approx(g.theta_m0, abs=1e-6)
    assert peak.max == pytest.approx(14.0, rel=1e-12)


def test_pronation_tilt_projection():
    g = PronationGeometry(theta_tilt=math.radians(20))
    assert pronation_torque(g, 1.0) == pytest.approx(
        math.cos(math.radians(20)) * pronation_torque(PronationGeometry(), 1.0), rel=1e-15)


def test_supination_components():
    g = SupinationGeometry()
    s1, s2, total = supination_torque(g, 0.0, 0.4)
    assert s2 == 0.0 and total == s1
    _, s2_90, _ = supination_torque(g, math.pi / 2, 0.4)
    assert s2_90 == g.f_t4 * g.r_t
    # tau_s1 peaks where theta_n0 + theta22 = 0
    peak = maximize_1d(lambda t: supination_torque(g, 0.0, t)[0], -math.pi / 2, 0.5, tol=1e-14)
    assert peak.argmax == pytest.approx(-g.theta_n0, abs=1e-6)


def test_supination_peak_value():
    g = SupinationGeometry()
    peak = maximize_1d(lambda t: supination_torque(g, math.pi / 2, t)[2], 0, math.radians(111.5))
    assert peak.max == pytest.approx(7.8, rel=1e-9)
    low = min(supination_torque(g, math.pi / 2, t)[2] for t in np.linspace(0, math.radians(111.5), 100))
    assert low > 0.7 * peak.max       # small fluctuation over rotation


def test_tau_s2_odd_in_theta21():
    g = SupinationGeometry()
    for t in (0.1, 0.7, 1.3):
        assert supination_torque(g, -t, 0.0)[1] == -supination_torque(g, t, 0.0)[1]


@settings(max_examples=60, deadline=None)
@given(c=st.floats(0.01, 10.0), t21=st.floats(0, ROM21), t22=st.floats(0, 1.946))
def test_linear_in_tendon_force(c, t21, t22):
    b = ElbowActuationGeometry(20e-3, 45e-3, 10e-3, f_t1=250.0, f_text=250.0)
    bs = b.scaled(c)
    assert flexion_torque(bs, t21) == pytest.approx(c * flexion_torque(b, t21), rel=1e-12)
    assert extension_torque(bs, t21) == pytest.approx(c * extension_torque(b, t21), rel=1e-12)
    p = PronationGeometry()
    assert pronation_torque(dataclasses.replace(p, f_t2=c * p.f_t2), t22) == pytest.approx(
        c * pronation_torque(p, t22), rel=1e-12)
    s = SupinationGeometry()
    s2 = dataclasses.replace(s, f_t3=c * s.f_t3, f_t4=c * s.f_t4)
    assert supination_torque(s2, t21, t22)[2] == pytest.approx(c * supination_torque(s, t21, t22)[2],
                                                               rel=1e-12)


def test_envelope_series(cfg):
    flex = torque_envelope(cfg, "flexion", 181)
    assert flex.columns == ["theta21", "brachialis", "biceps", "combined"]
    assert np.array_equal(flex["combined"], flex["brachialis"] + flex["biceps"])
    fore = torque_envelope(cfg, "forearm", 181)
    assert fore.columns == ["theta22", "pronation", "supinator", "supination"]
    sup = torque_envelope(cfg, "supination", 181)
    assert np.array_equal(sup["supination"], sup["supinator"] + sup["biceps"])
    ext = torque_envelope(cfg, "extension", 11)
    assert set(ext["extension"].tolist()) == {11.25}


def test_envelope_endpoints_below_peak(cfg):
    y = torque_envelope(cfg, "flexion", 562)["combined"]
    assert y[0] < y.max() and y[-1] < y.max()


def test_envelope_refinement_deterministic(cfg):
    a = torque_envelope(cfg, "flexion", 91)
    b = torque_envelope(cfg, "flexion", 181)
    assert np.abs(a.abscissa - b.abscissa[::2]).max() <= 1e-15
    assert np.abs(a["combined"] - b["combined"][::2]).max() <= 1e-12


def test_envelope_degenerate_range():
    c = loads_config("[joint]\ntheta21_max = 0.0\n")
    r = torque_envelope(c, "flexion", 50)
    assert r.abscissa.tolist() == [0.0]


def test_envelope_unknown_joint(cfg):
    with pytest.raises(ValueError):
        torque_envelope(cfg, "wrist", 10)
