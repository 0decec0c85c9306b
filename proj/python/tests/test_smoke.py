import math

import pytest

import cauchydual


def test_three_point_is_not_subnormal():
    rep = cauchydual.analyze("0,1/3,2/3:1,1,1")
    assert rep["schema"] == cauchydual.SCHEMA_VERSION
    assert rep["verdict"]["decision"] == "NotSubnormal"
    assert rep["verdict"]["path"] == "offdiag_nonzero"
    assert rep["verdict"]["max_normalized"] > 1e-2


def test_controls_are_subnormal():
    for spec in ("0:1", "0,1/2:1,1"):
        assert cauchydual.analyze(spec)["verdict"]["decision"] == "SubnormalNumeric"


def test_policy_override_reaches_the_core():
    rep = cauchydual.analyze("0,1/2:1,1", policy={"l_max": 3})
    assert len(rep["verdict"]["psd_probes"]) == 3


def test_paper_check_passes():
    rep = cauchydual.paper_check(rotate="1/7")
    assert rep["closed_form_applicable"]
    assert all(item["status"] == "PASS" for item in rep["items"])


def test_kernel_equality():
    rep = cauchydual.kernel("0,1/4:1,1", 0.3 + 0.1j, -0.2 + 0.4j)
    assert rep["difference"] < 1e-10
    kb = rep["K_B"]
    assert math.isfinite(kb["re"]) and math.isfinite(kb["im"])


def test_sweep_rows():
    rows = cauchydual.sweep(grid=4, weights=[(1, 1, 1)], jobs=2)
    assert len(rows) == 16
    assert {r["verdict"] for r in rows if not r["error"]} <= {"NotSubnormal", "SubnormalNumeric", "Inconclusive"}


def test_errors_carry_kind_and_module():
    with pytest.raises(cauchydual.Error) as info:
        cauchydual.analyze("0,1:1,1")
    kind, module, _ = info.value.args
    assert kind == "ValidationError"
    assert module == "measure_model"
