from pathlib import Path

import pytest

import eqloc

DATA = Path(__file__).resolve().parents[2] / "data"


def read(name):
    return (DATA / name).read_text()


def test_em_table_p112():
    table = eqloc.em_table(read("p112.fan"))
    assert table[1] == "(1 + e^{u1-u2}) / ((1-e^{2*u1-u2})(1-e^{-u2}))"


def test_euler_matches_lattice_points():
    fan = read("p112.fan")
    assert eqloc.euler_characteristic(fan, "ample") == eqloc.lattice_point_sum(fan, "ample")


def test_integrate_and_gkm():
    assert eqloc.integrate(read("p1.fan"), read("p1_d2.tuple")) == "1 + e^{u1} + e^{2*u1}"
    assert eqloc.gkm_violations(read("p112.fan"), read("p112_bad.tuple")) == [(1, 2)]


def test_non_integral_result():
    with pytest.raises(ArithmeticError):
        eqloc.integrate(read("p1.fan"), "cone 0: 1\ncone 1: 0\n")


def test_surface_relations():
    assert eqloc.surface_violations("pv", read("pv_good.tuple")) == []
    assert len(eqloc.surface_violations("pv", read("pv_bad.tuple"))) == 1


def test_input_errors_raise_value_error():
    with pytest.raises(ValueError):
        eqloc.em_table("rank 2\nray 2 0\n")


def test_run_cli():
    code, out, _ = eqloc.run_cli(["euler", "--fan", str(DATA / "p1.fan"), "--divisor", "d2"])
    assert code == 0
    assert out.startswith("chi(O(d2)) = ")
    assert eqloc.run_cli(["euler"])[0] == 2
