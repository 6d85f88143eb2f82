import io
import math

import numpy as np
import pytest

from arthrosim.sweep import SweepResult, closed_grid, degree_grid, parallel_map


def _result():
    x = degree_grid(0.0, 90.0, 4)
    return SweepResult("theta21", x, {"arm": np.array([0.001, 0.002, 0.0035, 0.004]),
                                      "eps": np.array([0.0, 0.1, -0.25, 1 / 3])},
                       {"theta21": "rad", "arm": "m", "eps": "1"},
                       provenance={"module": "test"}, notes=("hello",))


def test_csv_layout():
    text = _result().to_csv()
    lines = text.split("\r\n")
    assert lines[0] == "# module: test"
    assert lines[1] == "# hello"
    assert lines[2] == "theta21_deg,arm_mm,eps"
    assert lines[3] == "# units: deg,mm,1"
    assert lines[4] == "0,1,0"
    assert lines[7] == "90,4,0.333333333"
    assert text.endswith("\r\n")


def test_csv_round_trip_within_nine_digits():
    r = _result()
    back = SweepResult.from_csv(io.StringIO(r.to_csv()))
    assert back.columns == r.columns
    assert back.units == r.units
    for c in r.columns:
        assert np.allclose(back[c], r[c], rtol=1e-8, atol=0)


def test_radian_output():
    text = _result().to_csv(angle_unit="radians")
    assert "theta21_rad" in text and "# units: rad,mm,1" in text
    back = SweepResult.from_csv(text)
    assert np.allclose(back.abscissa, _result().abscissa, rtol=1e-9)


def test_nan_written():
    r = SweepResult("x", [0, 1], {"y": [1.0, math.nan]}, {"x": "1", "y": "N"})
    assert r.to_csv().split("\r\n")[-2] == "1,nan"


def test_negative_zero_normalized():
    r = SweepResult("x", [0, 1], {"y": [-0.0, 1.0]}, {"x": "1", "y": "1"})
    assert r.to_csv().split("\r\n")[2] == "0,0"


@pytest.mark.parametrize("kwargs, msg", [
    (dict(abscissa=[0, 1, 1]), "monotone"),
    (dict(series={"y": [1, 2]}), "abscissa has 3"),
    (dict(units={"x": "1"}), "unit tag"),
])
def test_validation(kwargs, msg):
    base = dict(abscissa_name="x", abscissa=[0, 1, 2], series={"y": [1, 2, 3]},
                units={"x": "1", "y": "1"})
    base.update(kwargs)
    with pytest.raises(ValueError, match=msg):
        SweepResult(**base)


def test_write_to_path(tmp_path):
    p = tmp_path / "r.csv"
    text = _result().to_csv(p)
    assert p.read_bytes() == text.encode("utf-8")


def test_degree_grid_hits_round_angles():
    g = degree_grid(0.0, 140.25, 562)
    assert g[360] == math.pi / 2
    assert g[-1] == math.radians(140.25)


def test_closed_grid_single_point():
    assert closed_grid(2.0, 2.0, 1).tolist() == [2.0]
    with pytest.raises(ValueError):
        closed_grid(1.0, 2.0, 1)


def test_parallel_map_keeps_order():
    items = list(range(200))
    assert parallel_map(lambda i: i * i, items, jobs=8) == [i * i for i in items]
