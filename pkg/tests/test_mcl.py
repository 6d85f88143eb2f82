import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from arthrosim.errors import ConfigError
from arthrosim.mcl import MclGeometry, mcl_curve, mcl_lengths, mcl_strains


@pytest.fixture(scope="module")
def geom():
    return MclGeometry()


def oracle_lengths(g, theta21):
    """O at the origin, origins O_a/O_p on the humeral axis, insertions on the ulna circle."""
    axis = np.array([0.0, 1.0])
    o_a = g.l_oa * axis
    o_p = -g.l_op_ecc * axis
    # A is theta_a1 away from O->O_a; P is theta_p1 away from O->O_p, on the other side.
    ta = g.theta_a0 + (math.pi / 2 - theta21)
    tp = g.theta_p0 + (theta21 - math.pi / 2)
    a = g.r_ins * np.array([math.sin(ta), math.cos(ta)])
    p = g.r_ins * np.array([math.sin(tp), -math.cos(tp)])
    return np.linalg.norm(a - o_a), np.linalg.norm(p - o_p)


def test_rest_lengths(geom):
    assert mcl_lengths(geom, math.pi / 2) == (geom.l_a0, geom.l_p0)
    assert mcl_strains(geom, math.pi / 2) == (0.0, 0.0)


@pytest.mark.parametrize("deg", [0.0, 30.0, 90.0, 135.0, 140.25])
def test_coordinate_oracle(geom, deg):
    t = math.radians(deg)
    la, lp = mcl_lengths(geom, t)
    oa, op = oracle_lengths(geom, t)
    assert abs(la - oa) <= 1e-12 and abs(lp - op) <= 1e-12
    ea, ep = mcl_strains(geom, t)
    ra, rp = oracle_lengths(geom, math.pi / 2)
    assert abs(ea - (oa - ra) / ra) <= 1e-9
    assert abs(ep - (op - rp) / rp) <= 1e-9


def test_anterior_taut_in_extension(geom):
    assert mcl_lengths(geom, 0.0)[0] > geom.l_a0


def test_posterior_taut_in_flexion(geom):
    assert mcl_lengths(geom, math.radians(135))[1] > geom.l_p0


def test_monotone_over_rom(geom):
    r = mcl_curve(geom, (0.0, 140.25), 562)
    i90 = 360
    assert r.abscissa[i90] == math.pi / 2
    assert r["eps_anterior"][i90] == 0.0 and r["eps_posterior"][i90] == 0.0
    assert np.all(np.diff(r["eps_anterior"][: i90 + 1]) < 0)
    assert np.all(np.diff(r["eps_posterior"][i90:]) > 0)


def test_literal_mode(geom):
    la, lp = mcl_lengths(geom, 0.3)
    ea, ep = mcl_strains(geom, 0.3, mode="literal")
    assert ea == (la - geom.l_oa) / geom.l_oa and ep == (lp - geom.l_op_ecc) / geom.l_op_ecc
    g = MclGeometry(strain_mode="literal")
    assert mcl_strains(g, 0.3) == (ea, ep)
    assert mcl_curve(g, (0.0, 90.0), 3).provenance["strain_mode"] == "literal"


def test_zero_eccentricity_keeps_length_constant():
    g = MclGeometry(l_oa=1e-300, l_op_ecc=1e-300)
    lengths = [mcl_lengths(g, math.radians(d))[0] for d in (0, 45, 90, 140)]
    assert max(lengths) - min(lengths) <= 1e-15


@settings(max_examples=50, deadline=None)
@given(ecc=st.floats(1.0, 20.0), r=st.floats(21.0, 40.0), a0=st.floats(20.0, 80.0))
def test_monotone_property(ecc, r, a0):
    # theta_a0 <= 90 deg keeps theta_a1 inside (0, 180) over the elbow range.
    g = MclGeometry(l_oa=ecc * 1e-3, l_op_ecc=ecc * 1e-3, r_ins=r * 1e-3,
                    theta_a0=math.radians(a0), theta_p0=math.radians(a0 * 0.5))
    r_ = mcl_curve(g, (0.0, 140.25), 562)
    assert np.all(np.diff(r_["eps_anterior"][:361]) < 0)
    assert np.all(np.diff(r_["eps_posterior"][360:]) > 0)


def test_invalid():
    with pytest.raises(ConfigError) as err:
        MclGeometry(r_ins=-1.0)
    assert err.value.field == "r_ins"
    with pytest.raises(ConfigError):
        MclGeometry(strain_mode="other")
