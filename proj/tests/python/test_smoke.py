"""Smoke tests for the python bindings."""

import pytest

import jcover


def test_psi():
    assert jcover.psi(1) == 1
    assert jcover.psi(2) == 3
    assert jcover.psi(6) == 12
    assert jcover.psi(10) == 18


def test_cosets():
    reps = jcover.coset_representatives(2)
    assert reps == [
        [["1", "0"], ["0", "2"]],
        [["1", "1"], ["0", "2"]],
        [["2", "0"], ["0", "1"]],
    ]
    assert len(jcover.coset_representatives(6)) == 12


def test_normalize():
    assert jcover.normalize("1/2", "0", "0", "1") == '[["1","0"],["0","2"]]'
    with pytest.raises(jcover.DomainError):
        jcover.normalize("1", "0", "0", "-1")


def test_j_values():
    re, im = jcover.evaluate_j('{"a": 1, "b": 0, "D": -4}', 50).split()
    assert re.startswith("1728.0000000000")
    assert float(im) == 0.0
    re0, _ = jcover.evaluate_j('{"a": 1, "b": 1, "D": -3}', 50).split()
    assert abs(float(re0)) < 1e-45


def test_series():
    coeffs = jcover.j_coefficients(3)
    assert coeffs == ["1", "744", "196884", "21493760", "864299970"]


def test_modular_polynomial():
    text = jcover.modular_polynomial(2, 60)
    lines = text.strip().splitlines()
    assert lines[0] == "PHI N 2"
    terms = {tuple(map(int, l.split()[:2])): int(l.split()[2]) for l in lines[1:]}
    assert terms[(2, 1)] == 1488
    assert terms[(0, 0)] == -157464000000000
    assert terms[(3, 0)] == 1


def test_class_polynomial():
    assert jcover.class_polynomial("-4", 0) == "HCLASS D -4\n0 0 -1728\n1 0 1\n"
    forms = jcover.reduced_forms("-23")
    assert forms == [["1", "1", "6"], ["2", "-1", "3"], ["2", "1", "3"]]


def test_cm_detection():
    assert jcover.is_cm_value("1728", 200) == "-4"
    assert jcover.is_cm_value("0", 200) == "-3"
    assert jcover.is_cm_value("287496", 200) == "-16"
    assert jcover.is_cm_value("5", 200) is None


def test_hecke_orbit():
    assert jcover.in_hecke_orbit("1728", "287496", 5) == 2
    assert jcover.in_hecke_orbit("1728", "1728", 5) == 1
    assert jcover.in_hecke_orbit("1728", "0", 5) is None


def test_finite_groups():
    assert jcover.galois_order(2, "psl") == 6
    assert jcover.galois_order(3, "psl") == 12
    assert jcover.galois_order(3, "pgl") == 24
    assert jcover.cyclic_subgroup_count(4) == 6
    assert jcover.stabilizer_index(2) == 6


def test_witness():
    assert jcover.witness_fails_standard_fibers(2)
    import json

    w = json.loads(jcover.nonstandard_fiber_witness(2))
    assert w["level"] == 2
    assert len(w["points"]) == 2
    assert w["points"][0]["orbit"]["1"] == w["points"][1]["orbit"]["1"]
    assert w["points"][0]["label"] != w["points"][1]["label"]
