import json

import pytest

from plausibility import fixtures
from plausibility.model import (ModelError, PlausibilityModel, UnknownEntity, ValidationError, disjoint_union,
                                dump_model, epistemic_class, find_isomorphism, is_isomorphism, load_model,
                                min_set, model_to_dict, set_leq, to_dot, validate)
from plausibility.oracle import random_model


@pytest.fixture
def ML():
    return fixtures.ml()


def test_load_closes_relations_and_reads_classes():
    doc = {
        "worlds": [{"id": f"w{i}", "val": ["p"] if i <= 3 else ["q"]} for i in range(1, 6)],
        "agents": ["a", "b"],
        "plaus": {"a": [["w3", "w2"], ["w2", "w1"], ["w3", "w1"]], "b": [["w1", "w4"], ["w3", "w5"]]},
    }
    m = load_model(json.dumps(doc))
    assert epistemic_class(m, "a", "w1") == {"w1", "w2", "w3"}
    assert epistemic_class(m, "a", "w4") == {"w4"}
    assert epistemic_class(m, "a", "w5") == {"w5"}
    assert find_isomorphism(m, fixtures.ml()) is not None


def test_single_world_gets_reflexive_relation():
    m = load_model({"worlds": [{"id": "w"}], "agents": ["a"]})
    assert m.plaus["a"] == {("w", "w")}
    assert validate(m) == []


def test_transitive_closure_applied():
    m = PlausibilityModel.build({"x": [], "y": [], "z": []}, ["a"], {"a": [("x", "y"), ("y", "z")]})
    assert m.geq("a", "x", "z")
    assert validate(m) == []


@pytest.mark.parametrize("doc", [
    "not json",
    "[]",
    '{"worlds": [], "agents": ["a"], "extra": 1}',
    '{"agents": ["a"]}',
    '{"worlds": [{"id": "w w"}], "agents": ["a"]}',
    '{"worlds": [{"id": "w"}, {"id": "w"}], "agents": ["a"]}',
    '{"worlds": [{"id": "w", "val": "p"}], "agents": ["a"]}',
    '{"worlds": [{"id": "w"}], "agents": ["a", "a"]}',
    '{"worlds": [{"id": "w"}], "agents": ["a"], "plaus": {"a": [["w", "v"]]}}',
    '{"worlds": [{"id": "w"}], "agents": ["a"], "plaus": {"b": []}}',
    '{"worlds": [{"id": "w"}], "agents": ["a"], "plaus": {"a": [["w"]]}}',
])
def test_malformed_documents_rejected(doc):
    with pytest.raises(ModelError):
        load_model(doc)


def test_validate_fixture_is_clean():
    assert validate(fixtures.mc()) == []


def test_incomparable_within_class_reported():
    # x >= y and z >= y put x, z in one class without relating them
    with pytest.raises(ValidationError) as info:
        PlausibilityModel.build({"x": [], "y": [], "z": []}, ["a"], {"a": [("x", "y"), ("z", "y")]})
    assert [v.invariant for v in info.value.violations] == ["incomparable within class"]
    assert set(info.value.violations[0].witness) == {"x", "z"}


def test_no_agents_reported():
    m = PlausibilityModel.build({"w": []}, [], {}, check=False)
    assert [v.invariant for v in validate(m)] == ["no agents"]


def test_validate_raw_relations():
    bad = PlausibilityModel(("x", "y"), ("a",), {"x": frozenset(), "y": frozenset()},
                            {"a": frozenset({("x", "y")})})
    assert "not reflexive" in {v.invariant for v in validate(bad)}
    stray = PlausibilityModel(("x",), ("a",), {"x": frozenset()}, {"a": frozenset({("x", "x"), ("x", "q")})})
    assert [v.invariant for v in validate(stray)] == ["unknown world in relation"]
    missing = PlausibilityModel(("x",), ("a",), {"x": frozenset()}, {})
    assert [v.invariant for v in validate(missing)] == ["missing relation"]
    intrans = PlausibilityModel(("x", "y", "z"), ("a",), {w: frozenset() for w in "xyz"},
                                {"a": frozenset({(w, w) for w in "xyz"} | {("x", "y"), ("y", "z")})})
    assert [v.invariant for v in validate(intrans)] == ["not transitive"]


def test_min_set(ML):
    assert min_set(ML, "a", {"w1", "w2", "w3"}) == {"w1"}
    assert min_set(ML, "a", {"w1", "w3"}) == {"w1"}
    assert min_set(ML, "a", set()) == frozenset()


def test_set_leq(ML):
    # set_leq(Y, Z) reads Y >= Z
    assert set_leq(ML, "a", {"w2"}, {"w1"})
    assert not set_leq(ML, "a", {"w1"}, {"w2"})
    assert set_leq(ML, "a", set(), {"w4"})


def test_unknown_entities(ML):
    with pytest.raises(UnknownEntity):
        epistemic_class(ML, "a", "nowhere")
    with pytest.raises(UnknownEntity):
        epistemic_class(ML, "z", "w1")


def test_disjoint_union_keeps_classes():
    MC, MR = fixtures.mc(), fixtures.mr()
    u, left, right = disjoint_union(MC, MR)
    assert len(u.worlds) == 8
    for m, ren in ((MC, left), (MR, right)):
        for a in m.agents:
            for w in m.worlds:
                assert epistemic_class(u, a, ren[w]) == {ren[v] for v in epistemic_class(m, a, w)}


def test_self_union_and_singletons():
    MC = fixtures.mc()
    u, left, right = disjoint_union(MC, MC)
    assert find_isomorphism(u.restrict(left.values()), u.restrict(right.values())) is not None
    one = PlausibilityModel.build({"w": []}, ["a"])
    u, _, _ = disjoint_union(one, one)
    assert u.plaus["a"] == {(w, w) for w in u.worlds}


def test_isomorphism_respects_valuation_and_order():
    MC = fixtures.mc()
    renamed = MC.rename({"v1": "x", "v2": "y", "v3": "z"})
    iso = find_isomorphism(MC, renamed)
    assert iso == {"v1": "x", "v2": "y", "v3": "z"}
    assert is_isomorphism(MC, renamed, iso)
    assert find_isomorphism(MC, fixtures.mr()) is None


def test_round_trip_serialization():
    for seed in range(30):
        m = random_model(seed)
        back = load_model(dump_model(m))
        assert model_to_dict(back) == model_to_dict(m)
        assert dump_model(m) == dump_model(random_model(seed))


def test_dot_output(ML):
    dot = to_dot(ML)
    assert dot.startswith("digraph")
    assert '"w3" -> "w2" [label="a"]' in dot
