import cmath
import math

import pytest

import famedkit as fk

VOL41 = 2.029883212819307


def test_presets_listed():
    names = fk.preset_names()
    for n in ["fig8", "twist_4", "twist_5", "twist_6", "twist_7"]:
        assert n in names


def test_parse_and_matrices():
    p = fk.parse("fig8")
    assert p["tetrahedra"] == 2
    m = fk.matrices("fig8")
    assert m["Q"] == [["1", "0"], ["0", "-1"]]
    assert m["scriptG"] == [["-1", "0"], ["0", "2"]]


def test_famed_on_presets():
    for n in ["fig8", "twist_4", "twist_5", "twist_6", "twist_7"]:
        assert fk.famed(n)["famed"]


def test_nz_matrices():
    nz = fk.nz("fig8")
    assert nz["A"] == [[1, -2], [0, 4]]
    assert nz["B"] == [[-1, -1], [0, 2]]


def test_solve_and_volume():
    s = fk.solve("fig8")
    assert s["converged"]
    assert abs(s["volume"] - VOL41) < 1e-12
    for z in s["z"]:
        assert abs(z - cmath.exp(1j * math.pi / 3)) < 1e-12
    v = fk.maximize_volume("fig8")
    assert abs(v["value"] - VOL41) < 1e-9


def test_special_functions():
    assert abs(fk.bloch_wigner(cmath.exp(1j * math.pi / 3)) * 2 - VOL41) < 1e-13
    assert abs(abs(fk.phi_b(0.7, 0.8)) - 1) < 1e-12
    assert abs(fk.dilog(1) - math.pi ** 2 / 6) < 1e-14
    assert abs(fk.volume_functional([math.pi / 3] * 6) - VOL41) < 1e-13


def test_one_loop():
    assert abs(fk.one_loop("fig8") - 3) < 1e-12
    f, fp, fpp = fk.flattening("fig8")
    assert all(a + b + c == 1 for a, b, c in zip(f, fp, fpp))


def test_partition_and_jones():
    z = fk.partition_modulus("fig8", 1.0)
    assert abs(z - 0.27639320225) < 1e-8
    j = fk.jones("fig8", 0, 0.6)
    assert abs(j - 1.0002291550069) < 1e-9


def test_errors():
    with pytest.raises(ValueError):
        fk.parse("no_such_file.tri")
    with pytest.raises(RuntimeError):
        fk.partition_modulus("twist_5", 0.8)


def test_cli():
    code, out, err = fk.cli("famed", "fig8")
    assert code == 0
    assert "outputs.famed = true" in out
    code, out, err = fk.cli("bogus")
    assert code == 2
