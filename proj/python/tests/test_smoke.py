import math

import pytest

import vecwp


def test_version_and_labels():
    assert vecwp.__version__
    labels = vecwp.registry_labels()
    assert "x-minus-xex" in labels
    assert "hilbert-truncation-2" in labels


def test_oriented_distance_orthant():
    cone = vecwp.OrderingCone.orthant(2)
    assert vecwp.oriented_distance(cone, [1.0, 1.0])["value"] == pytest.approx(math.sqrt(2.0))
    assert vecwp.oriented_distance(cone, [-1.0, -1.0])["value"] == pytest.approx(-1.0)
    assert vecwp.oriented_distance(cone, [3.0, -4.0])["value"] == pytest.approx(3.0)


def test_custom_cone():
    cone = vecwp.OrderingCone([[1.0, 0.0], [1.0, 1.0]])
    assert cone.contains([2.0, 1.0])
    assert not cone.contains([0.0, 1.0])
    assert len(cone.dual_generators) == 2


def test_errors_carry_kind():
    with pytest.raises(vecwp.Error) as info:
        vecwp.replicate("no-such-problem")
    assert info.value.args[0] == "UnknownLabel"
    with pytest.raises(vecwp.Error) as info:
        vecwp.OrderingCone([[1.0, 0.0], [0.0, 1.0]], k0=[1.0, 0.0])
    assert info.value.args[0] == "NotInteriorPoint"


def test_replicate_zero_function():
    results = vecwp.replicate("zero-function")
    assert results
    assert all(r["passed"] for r in results)


def test_dh_check_quad_pair():
    rep = vecwp.dh_check("quad-pair")
    assert rep["verdict"] == "well_posed_evidence"
    first = rep["diameters"][0]
    assert first[-1] < first[0]


def test_classify_exponential_example():
    assert vecwp.classify("x-minus-xex", [1.0])["efficient"] == "yes"
    res = vecwp.classify("x-minus-xex", [-1.0])
    assert res["efficient"] == "no"
    assert res["dominating_witness"][0] < -1.0


def test_tykhonov_check():
    rep = vecwp.tykhonov_check("hilbert-truncation-2", [1.0])
    assert rep["verdict"] == "well_posed_evidence"


def test_run_matches_cli_contract():
    code, out, err = vecwp.run("pipeline", problem="x-x2", sigma=0.1)
    assert code == 0, err
    assert "valid=true" in out
    again = vecwp.run("pipeline", problem="x-x2", sigma=0.1)
    assert again[1] == out
    code, out, err = vecwp.run("pipeline", problem="x-minus-xex")
    assert code == 2
    assert "error.kind=NoBoundingFunctional" in err
