import random

import pytest

from plausibility import fixtures
from plausibility.bisim import (Bisimilar, DomainTooLarge, EquivRelation, bisimilar, brute_force_largest, check_autobisimulation,
                                contract, derived_relation, distinguishing_formula, equivalence_closure,
                                largest_autobisimulation, normal_relation, normalize, partitions)
from plausibility.formula import Atom, classify
from plausibility.model import PlausibilityModel, find_isomorphism, validate
from plausibility.oracle import Bounds, random_model
from plausibility.semantics import satisfies


@pytest.fixture
def ML():
    return fixtures.ml()


def ident(m):
    return {(w, w) for w in m.worlds}


def test_equivalence_closure(ML):
    assert equivalence_closure({("w1", "w3")}, ML).as_lists() == [["w1", "w3"], ["w2"], ["w4"], ["w5"]]
    assert equivalence_closure(set(), ML) == EquivRelation.identity(ML)
    assert ["w1", "w3", "w5"] in equivalence_closure({("w1", "w3"), ("w3", "w5")}, ML).as_lists()


def test_equiv_relation_helpers():
    R = EquivRelation.from_blocks([["b", "a"], ["c"]])
    assert R.blocks == (("a", "b"), ("c",))
    assert R.related("b", "a") and not R.related("a", "c")
    assert R.rep["b"] == "a"
    assert EquivRelation.from_blocks([["a"], ["b"], ["c"]]).refines(R)
    assert not R.refines(EquivRelation.from_blocks([["a"], ["b"], ["c"]]))
    with pytest.raises(ValueError):
        EquivRelation.from_blocks([["a"], ["a", "b"]])


def test_derived_relation_worked_example(ML):
    R = equivalence_closure({("w1", "w3"), ("w4", "w5")}, ML)
    expected = {("w1", "w3"), ("w3", "w1"), ("w2", "w3"), ("w2", "w1")} | ident(ML)
    assert derived_relation(ML, R, "a") == expected
    assert derived_relation(ML, R, "b") == ML.plaus["b"]


def test_derived_relation_identity_on_antisymmetric_order():
    m = PlausibilityModel.build({"x": [], "y": []}, ["a"], {"a": [("x", "y")]})
    assert derived_relation(m, set(), "a") == m.plaus["a"]


def test_check_autobisimulation(ML):
    good = ident(ML) | {("w1", "w3"), ("w3", "w1"), ("w4", "w5"), ("w5", "w4")}
    assert check_autobisimulation(ML, good).ok
    assert check_autobisimulation(ML, ident(ML)).ok
    bad = check_autobisimulation(ML, ident(ML) | {("w1", "w2"), ("w2", "w1")})
    assert not bad.ok
    # w1 sees a q-world for b, w2 does not
    assert any(v.agent == "b" for v in bad.violations)
    atoms = check_autobisimulation(ML, {("w1", "w4")})
    assert [v.clause for v in atoms.violations][:1] == ["atoms"]


def test_largest_autobisimulation_fixtures():
    assert largest_autobisimulation(fixtures.ml()).as_lists() == [["w1", "w3"], ["w2"], ["w4", "w5"]]
    MC = fixtures.mc()
    assert largest_autobisimulation(MC) == EquivRelation.identity(MC)
    one = PlausibilityModel.build({"w": []}, ["a"])
    assert brute_force_largest(one) == EquivRelation.identity(one)
    assert largest_autobisimulation(fixtures.p_model()).as_lists() == [["w", "y"], ["x"], ["z"]]


def test_partitions_count():
    # Bell numbers
    assert [sum(1 for _ in partitions(list(range(n)))) for n in range(1, 6)] == [1, 2, 5, 15, 52]


def test_refinement_matches_brute_force():
    for seed in range(150):
        m = random_model(seed, Bounds(max_worlds=4, max_agents=2, max_props=2))
        assert largest_autobisimulation(m) == brute_force_largest(m), seed


def test_brute_force_bound():
    m = random_model(3, Bounds(max_worlds=8, min_worlds=8))
    with pytest.raises(DomainTooLarge):
        brute_force_largest(m, max_brute=4)


def test_normal_relation_examples():
    ML, MR = fixtures.ml(), fixtures.mr()
    assert find_isomorphism(ML.with_plaus({a: normal_relation(ML, a) for a in ML.agents}), MR) is not None
    MC = fixtures.mc()
    assert normal_relation(MC, "a") == MC.plaus["a"]
    M = fixtures.exp_cd_mprime()
    image = {v for w, v in normal_relation(M, "a") if w == "w3'"}
    assert image == {"w1'", "w3'"}


def test_contract_worked_example():
    quotient, name = contract(fixtures.mr())
    assert quotient.worlds == ("c:u1", "c:u2", "c:u4")
    assert name["u3"] == "c:u1" and name["u5"] == "c:u4"
    assert quotient.plaus["a"] - ident(quotient) == {("c:u2", "c:u1")}
    assert quotient.plaus["b"] - ident(quotient) == {("c:u1", "c:u4")}
    assert [sorted(quotient.valuation[w]) for w in quotient.worlds] == [["p"], ["p"], ["q"]]


def test_contraction_is_minimal_and_normal():
    for seed in range(60):
        m = random_model(seed)
        q, _ = contract(m)
        assert validate(q) == []
        assert largest_autobisimulation(q) == EquivRelation.identity(q)
        assert find_isomorphism(normalize(q), q) is not None
        n = normalize(m)
        assert largest_autobisimulation(n) == largest_autobisimulation(m)


def test_bisimilar_examples():
    ML = fixtures.ml()
    assert bisimilar((ML, "w1"), (ML, "w3"))[0]
    assert bisimilar((ML, "w2"), (ML, "w2"))[0]
    assert bisimilar((ML, "w1"), (ML, "w2")) == (False, None)


def test_bisimilar_is_an_equivalence_on_samples():
    rng = random.Random(5)
    models = [random_model(s, Bounds(max_worlds=4)) for s in range(30)]
    points = [(m, w) for m in models for w in m.worlds]
    for _ in range(60):
        x, y, z = rng.sample(points, 3)
        assert bisimilar(x, x)[0]
        assert bisimilar(x, y)[0] == bisimilar(y, x)[0]
        if bisimilar(x, y)[0] and bisimilar(y, z)[0]:
            assert bisimilar(x, z)[0]


def test_points_bisimilar_to_their_contraction():
    for seed in range(40):
        m = random_model(seed)
        q, name = contract(m)
        for w in m.worlds:
            assert bisimilar((m, w), (q, name[w]))[0]


def test_distinguishing_formula_examples():
    ML = fixtures.ml()
    f = distinguishing_formula(ML, "w1", "w2")
    assert classify(f) <= {"C"}
    assert satisfies(ML, "w1", f) and not satisfies(ML, "w2", f)
    with pytest.raises(Bisimilar):
        distinguishing_formula(ML, "w1", "w3")
    two = PlausibilityModel.build({"x": ["p"], "y": []}, ["a"])
    assert distinguishing_formula(two, "x", "y") == Atom("p")


def test_distinguishing_formulas_verified_on_random_models():
    for seed in range(100):
        m = random_model(seed, Bounds(max_worlds=5, max_agents=2, max_props=2))
        Q = largest_autobisimulation(m)
        for w in m.worlds:
            for v in m.worlds:
                if not Q.related(w, v):
                    f = distinguishing_formula(m, w, v)
                    assert satisfies(m, w, f) and not satisfies(m, v, f)
