import json

import pytest

import _flagforge as ff

KOSZUL_XY = {
    "ring": {"field": "q", "vars": ["x", "y"]},
    "twists": [[0], [-1, -1], [-2]],
    "maps": [[["x", "y"]], [["-y"], ["x"]]],
}


def koszul(field="q"):
    out = dict(KOSZUL_XY)
    out["ring"] = {"field": field, "vars": ["x", "y"]}
    return json.dumps(out)


def test_check_recognizes_shapes():
    assert ff.check(koszul()) == "complex"
    assert ff.check(ff.fold(koszul(), 2)) == "differential-module"
    ci = {"ring": {"field": "q", "vars": ["x", "y"]}, "gens": ["x^2", "y^2"]}
    assert ff.check(json.dumps(ci)) == "complete-intersection"


def test_fold_twists_and_validity():
    D = json.loads(ff.fold(koszul(), 2))
    assert D["degree"] == 2
    assert sorted(D["twists"]) == [0, 1, 1, 2]
    assert D["flag_levels"] == [[0], [1, 2], [3]]


def test_deform_reaches_full_stage():
    D = json.loads(ff.deform(koszul(), 2))
    assert "obstructed" not in D
    assert len(D["twists"]) == 4
    assert ff.check(json.dumps(D)) == "differential-module"


def test_homology_matches_quotient():
    hf = ff.homology(ff.fold(koszul(), 2), (0, 3))
    assert hf == {0: 1, 1: 0, 2: 0, 3: 0}
    default = ff.homology(ff.fold(koszul(), 2))
    assert default[0] == 1 and all(v == 0 for j, v in default.items() if j > 0)


def test_rigidity_window_published_value():
    assert ff.rigidity_window([2, 2, 5, 7, 9], 5) == (-16, 16)
    assert ff.is_a_rigid([1, 1, 1], 3, 3)
    assert not ff.is_a_rigid([1, 1, 1], 3, 2)


def test_ext_dim_agrees_with_hilbert_symmetry():
    # socle degree of S/(x^2, y^2) is 2; Ext^2 in degree -4 is the socle dual
    assert ff.ext_dim([2, 2], 2, 2, -4) == 1
    assert ff.hilbert([2, 2], 2, 2) == [1, 2, 1]


def test_dim_bounds():
    assert ff.dim_bounds(koszul(), 2) == (1, 1)
    assert ff.dim_bounds(koszul(), 0) == (0, 0)


def test_enumerate_over_f2():
    classes = ff.enumerate_flags(koszul(field=2), 2)
    assert len(classes) == 2
    for mult, flag in classes:
        assert mult == "1"
        parsed = json.loads(flag)
        assert parsed["degree"] == 2
    assert len(ff.enumerate_flags(koszul(field=2), 0)) == 1


def test_minimize_drops_unit_pairs():
    corner = json.loads(ff.witness([2, 2, 3], 3, 5))["flag"]
    module, total = ff.minimize(json.dumps(corner))
    assert total == len(json.loads(module)["twists"])


def test_witness_fields():
    w = json.loads(ff.witness([2, 2, 3], 3, 5))
    assert w["index"] == 2
    assert w["internal_degree"] == 0
    assert w["monomial"] == "1"
    assert w["flag"]["degree"] == 5


def test_deficiency_degrees():
    assert ff.ci_deficiency_degrees([1, 1]) == {2}
    assert ff.pure_deficiency_degrees([0, 1, 2, 3]) == {2}
    assert 0 not in ff.pure_deficiency_degrees([0, 3, 7, 12])


def test_errors_are_typed():
    with pytest.raises(ff.FlagforgeError, match="ParseError"):
        ff.check("{not json")
    bad = dict(KOSZUL_XY)
    bad["maps"] = [[["x", "x^2"]], [["-y"], ["x"]]]
    with pytest.raises(ff.FlagforgeError, match="HomogeneityViolation"):
        ff.check(json.dumps(bad))
