from fractions import Fraction

import pytest

import equidef


def test_oracles_discriminate_linf():
    pts = [(0, 0), (2, 1), (4, 0)]
    assert equidef.oracle("GAMMA", pts, norm="linf")
    assert not equidef.oracle("B", pts, norm="linf")
    assert equidef.oracle("B", [(0, 0), (1, 0), (3, 0)], norm="l2")


def test_distance_exact():
    assert equidef.distance((0, 0), (3, 4)) == "5"
    assert equidef.distance((0, 0), (1, 1)) == "sqrt(2)"
    assert equidef.distance((0, 0), (Fraction(1, 2), "1/2"), norm="l1") == "1"


def test_evaluate_gamma_with_psi_oracle():
    value, _, complete = equidef.evaluate(
        "(rel GAMMA a b c)", {"a": (0, 0), "b": (1, 0), "c": (3, 0)}, impl={"GAMMA": "formula"}
    )
    assert value and complete


def test_evaluate_b_linf_repaired_false():
    value, _, _ = equidef.evaluate(
        "(rel B a b c)",
        {"a": (0, 0), "b": (2, 1), "c": (4, 0)},
        impl={"B": "formula"},
        norm="linf",
        trunc={"b_depth": 1},
    )
    assert not value


def test_strict_paper_gap():
    pts = {"a": (0, 0), "b": (2, 0), "c": (4, 0)}
    strict, _, _ = equidef.evaluate("(rel B a b c)", pts, impl={"B": "formula"}, trunc={"b_mode": "strict-paper"})
    repaired, _, _ = equidef.evaluate("(rel B a b c)", pts, impl={"B": "formula"})
    assert not strict and repaired
    assert equidef.oracle("B", [pts["a"], pts["b"], pts["c"]])


def test_unknown_relation_raises():
    with pytest.raises(SyntaxError):
        equidef.roundtrip("(rel FOO a b c)")


def test_roundtrip_fixpoint():
    text = equidef.expand("GAMMA")
    assert equidef.roundtrip(text) == text


def test_verify_layer_report():
    r = equidef.verify_layer("GAMMA", samples=50, seed=3, norm="l1")
    assert r["samples"] == 50 and r["counterexamples"] == []


def test_closure_provenance():
    u = equidef.closure("DELTA:4", [(0, 0), (1, 0), ("7/2", 0)], norm="l1")
    tags = {p["provenance"] for p in u["points"]}
    assert "input" in tags and u["complete"]


def test_axioms_and_determinism():
    a = equidef.check_axioms("acf", samples=200, seed=11, norm="linf")
    b = equidef.check_axioms("acf", samples=200, seed=11, norm="linf")
    assert a == b
    assert all(r["violations"] == [] for r in a)


def test_vogt_shear_violates():
    reports = equidef.vogt({"maps": ["shear", "identity"], "norms": ["l2"], "quadruples": 300, "triples": 100, "seed": 5})
    by_map = {r["map"]: r for r in reports}
    assert by_map["shear"]["classification"] == "violating"
    assert by_map["identity"]["classification"] == "bidirectional-preserving"
