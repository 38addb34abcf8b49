import json

import pytest

import sheetslice


def test_catalog_counts():
    b3 = {d["label"]: d for d in sheetslice.catalog("B", 3)}
    assert b3["S"]["components"] == 32
    assert b3["S'"]["components"] == 4
    assert b3["S"]["class_dimension"] == 12


def test_certify_c3_s2():
    c = sheetslice.certify("C", 3, "S2", p=1009, samples=8, seed=3)
    assert c["certified"]
    assert c["count"] == 8
    assert len(c["transcript"]) == 10
    assert "seed 3" in c["transcript"][0]


def test_certify_is_deterministic():
    a = sheetslice.certify("B", 3, "S", samples=6, seed=5)
    b = sheetslice.certify("B", 3, "S", samples=6, seed=5)
    assert a["transcript"] == b["transcript"]


def test_gamma_shapes():
    assert sheetslice.gamma_shape("E", 6, "S") == [4, 4]
    assert sheetslice.gamma_shape("E", 7, "S") == [4, 4, 4]


def test_equation_chain():
    r = sheetslice.equation_chain(2)
    assert r["passed"] == r["combinations"] == 8
    assert r["controls_caught"] == r["controls"] > 0


def test_witnesses():
    found, w = sheetslice.witness("B", 2, "(3,1^2)")
    assert found and "S, S'" in w
    assert sheetslice.witness("C", 3, "*") == (False, "none")


def test_oracle_sl2_f3():
    assert sheetslice.group_order("C", 2, 3) == 51840
    r = sheetslice.oracle_classes("A", 1, 3)
    assert r["order"] == 24
    assert len(r["rows"]) == 7
    assert r["ok"]
    assert all(row["ok"] for row in r["rows"])


def test_oracle_budget_refusal():
    with pytest.raises(sheetslice.BudgetExceeded, match="42456960"):
        sheetslice.oracle_classes("A", 2, 9)


def test_report_schema_and_determinism():
    a = sheetslice.run_report("verify-slice", type="B", rank=2, samples=8, seed=9)
    b = sheetslice.run_report("verify-slice", type="B", rank=2, samples=8, seed=9)
    assert a == b
    r = json.loads(a)
    assert r["schema"] == sheetslice.REPORT_SCHEMA == "sheetslice-report/1"
    assert r["config"]["seed"] == 9
    assert r["summary"]["ok"]
    for claim in r["claims"]:
        assert set(claim) == {"id", "citation", "status", "witness", "detail"}


def test_report_rejects_bad_selectors():
    with pytest.raises(ValueError, match="available"):
        sheetslice.report("catalog", type="B", rank=3, sheet="nope")
