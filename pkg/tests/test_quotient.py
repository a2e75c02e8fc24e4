import json

import pytest

from bicyclic.interassociate import InterassociateParams, star_ext
from bicyclic.monoid import ZERO, Element
from bicyclic.quotient import (
    IdealAxiomViolation,
    IdealFileError,
    IdealModel,
    natural_map,
    rees_quotient,
)

LEFT_ZERO = {
    "labels": ["t1", "t2"],
    "table": [["t1", "t1"], ["t2", "t2"]],
    "left": "t1",
    "right": "t1",
}


def test_singleton_ideal():
    params = InterassociateParams(1, 1)
    report = rees_quotient(params, IdealModel.null(("theta",)), 6)
    assert report.ok
    assert report.fiber_sizes[ZERO] == 1
    assert all(v == 1 for v in report.fiber_sizes.values())
    assert report.mixed_associativity_failures == []


def test_left_zero_ideal():
    params = InterassociateParams(2, 1)
    ideal = IdealModel.from_dict(LEFT_ZERO)
    report = rees_quotient(params, ideal, 5)
    assert report.ok and report.well_defined
    assert report.fiber_sizes[ZERO] == 2
    assert sum(report.fiber_sizes.values()) == 2 + 36
    # (t2 t1) x = t1 but t2 (t1 x) = t2: reported, not rejected
    fails = report.mixed_associativity_failures
    assert fails
    mul = ideal.product_fn(params)
    for r, s, t in fails:
        assert mul(mul(r, s), t) != mul(r, mul(s, t))


@pytest.mark.parametrize("mn", [(0, 0), (1, 0), (2, 2)])
def test_null_two_element_ideal_table(mn):
    params = InterassociateParams(*mn)
    ideal = IdealModel.null(("a", "b"))
    report = rees_quotient(params, ideal, 8)
    assert report.ok and report.mismatches == []
    assert report.mixed_associativity_failures == []
    # independent comparison of a few entries
    mul = ideal.product_fn(params)
    for x in (Element(0, 3), Element(4, 1)):
        for y in (Element(2, 2), Element(0, 0)):
            assert natural_map(ideal, mul(x, y)) == star_ext(params, x, y)
        assert natural_map(ideal, mul(x, "a")) is ZERO


def test_malformed_action_names_triple():
    data = dict(LEFT_ZERO, right={"default": "t1", "entries": {"t2 q^1p^2": "q^3"}})
    ideal = IdealModel.from_dict(data)
    with pytest.raises(IdealAxiomViolation) as err:
        rees_quotient(InterassociateParams(1, 1), ideal, 4)
    assert err.value.triple == ("t2", Element(1, 2), Element(3, 0))
    assert "t2 * q^1p^2 = q^3" in str(err.value)


def test_malformed_internal_table():
    data = dict(LEFT_ZERO, table=[["t1", "p^2"], ["t2", "t2"]])
    with pytest.raises(IdealAxiomViolation) as err:
        IdealModel.from_dict(data).validate(InterassociateParams(0, 0), 2)
    assert err.value.triple == ("t1", "t2", Element(0, 2))


def test_nonassociative_internal_table():
    data = dict(LEFT_ZERO, table=[["t2", "t1"], ["t1", "t1"]])
    with pytest.raises(IdealAxiomViolation) as err:
        IdealModel.from_dict(data).validate(InterassociateParams(0, 0), 2)
    assert len(err.value.triple) == 3


def test_window_restricts_left_entries():
    # a bad entry outside the window is never consulted
    data = dict(LEFT_ZERO, left={"default": "t1", "entries": {"q^9 t1": "1"}})
    ideal = IdealModel.from_dict(data)
    assert rees_quotient(InterassociateParams(1, 0), ideal, 5).ok
    with pytest.raises(IdealAxiomViolation):
        rees_quotient(InterassociateParams(1, 0), ideal, 9)


@pytest.mark.parametrize("bad, match", [
    ({}, "labels"),
    ({"labels": ["a"], "table": [["a", "a"]], "left": "a", "right": "a"}, "square"),
    ({"labels": ["a"], "table": [["zz"]], "left": "a", "right": "a"}, "neither"),
    ({"labels": ["a"], "table": [["a"]], "right": "a"}, "left"),
    ({"labels": ["a", "a"], "table": [["a", "a"], ["a", "a"]], "left": "a", "right": "a"}, "duplicate"),
    ({"labels": ["a"], "table": [["a"]], "left": {"entries": {"q": "a"}}, "right": "a"}, "two"),
])
def test_bad_descriptions(bad, match):
    if match == "square":
        bad = dict(bad, table=[["a", "a"]])
    with pytest.raises(IdealFileError, match=match):
        IdealModel.from_dict(bad)


def test_missing_action_entry():
    ideal = IdealModel.from_dict(dict(LEFT_ZERO, left={"entries": {"1 t1": "t1"}}))
    with pytest.raises(IdealFileError, match="no entry"):
        ideal.validate(InterassociateParams(0, 0), 1)


def test_from_file(tmp_path):
    path = tmp_path / "ideal.json"
    path.write_text(json.dumps(LEFT_ZERO))
    report = rees_quotient(InterassociateParams(0, 1), IdealModel.from_file(path), 4)
    assert report.ok
    d = report.to_dict()
    assert d["fiber_sizes"] == {"0": 2}
    assert d["all_other_fibers_singletons"]
    assert d["matches_C0_table"]
    with pytest.raises(IdealFileError):
        IdealModel.from_file(tmp_path / "missing.json")
    (tmp_path / "junk.json").write_text("{not json")
    with pytest.raises(IdealFileError):
        IdealModel.from_file(tmp_path / "junk.json")
