import random

import pytest

from plausibility import fixtures
from plausibility.formula import Atom, CondBelief, DegBelief, Know, Not, classify, parse, subformulas, to_text
from plausibility.oracle import random_formula, random_model
from plausibility.semantics import Evaluator, satisfies
from plausibility.translate import (TranslationError, component, cond_to_degrees, cond_to_safe, expand_knowledge,
                                    global_degrees, layer_index)


def test_cond_to_safe_instance():
    assert to_text(cond_to_safe(parse("B[a|p] q"))) == "Khat[a] p -> Khat[a] (p & [][a] (p -> q))"
    assert cond_to_safe(parse("K[a] p")) == parse("K[a] p")


def test_cond_to_safe_output_language():
    for seed in range(100):
        f = random_formula(seed, ("C",), 3)
        assert classify(cond_to_safe(f)) <= {"S"}


def test_inputs_outside_conditional_language_rejected():
    with pytest.raises(TranslationError):
        cond_to_safe(parse("B[a#1] p"))
    with pytest.raises(TranslationError):
        cond_to_degrees(fixtures.mc(), "v1", parse("[][a] p"))


def test_expand_knowledge():
    assert expand_knowledge(parse("K[a] p")) == CondBelief("a", Not(Atom("p")), parse("false"))
    assert expand_knowledge(Atom("p")) == Atom("p")
    for seed in range(100):
        m = random_model(seed)
        f = random_formula(seed, ("C", "D", "S"), 3, m.props, m.agents)
        g = expand_knowledge(f)
        assert not any(isinstance(h, Know) for h in subformulas(g))
        assert Evaluator(m).mask(f) == Evaluator(m).mask(g)


def test_layer_index_examples():
    assert layer_index(fixtures.mc(), "v1", "a", parse("Khat[b] q")) == 0
    for k in range(0, 6):
        # w0..wk fill layers 0..k, so the q-world x sits in layer k+1
        assert layer_index(fixtures.mk(k), "w0", "a", Atom("q")) == k + 1
    assert layer_index(fixtures.ml(), "w4", "a", Atom("q")) == 0
    with pytest.raises(TranslationError):
        layer_index(fixtures.ml(), "w4", "a", Atom("p"))


def test_component():
    assert component(fixtures.ml(), "w2") == {"w1", "w2", "w3", "w4", "w5"}
    assert component(fixtures.mk(1), "x") == set(fixtures.mk(1).worlds)


def test_propositional_formulas_translate_to_themselves():
    f = parse("p & ~q -> r | true")
    assert cond_to_degrees(fixtures.mc(), "v1", f) == f


def test_degrees_translation_on_worked_example():
    MC = fixtures.mc()
    g = parse("B[a|Khat[b] q] B[b] q")
    out = cond_to_degrees(MC, "v1", g)
    assert classify(out) == {"D"}
    assert isinstance(out.left, DegBelief) and out.left.degree == 0
    assert satisfies(MC, "v1", out)


def test_degrees_translation_agrees_at_context_world():
    rng = random.Random(3)
    for seed in range(150):
        m = random_model(seed)
        f = random_formula(rng, ("C",), 3, m.props, m.agents)
        w = rng.choice(m.worlds)
        for verbatim in (False, True):
            out = cond_to_degrees(m, w, f, verbatim=verbatim)
            assert classify(out) <= {"D"}
        assert satisfies(m, w, f) == satisfies(m, w, cond_to_degrees(m, w, f))


def test_literal_translation_counterexample():
    # the literal disjunctions can hold vacuously at worlds they were not built for
    m = random_model(41)
    g = parse("B[b | B[a|p] p] (B[a|p] p -> K[b] ~p)")
    assert not satisfies(m, "w1", g)
    assert satisfies(m, "w1", cond_to_degrees(m, "w1", g, verbatim=True))
    assert not satisfies(m, "w1", cond_to_degrees(m, "w1", g))


def test_global_degrees_exact_on_component():
    for seed in range(100):
        m = random_model(seed)
        f = random_formula(seed, ("C",), 3, m.props, m.agents)
        w = m.worlds[0]
        ev = Evaluator(m)
        out = global_degrees(m, w, f)
        for v in component(m, w):
            assert ev.satisfies(v, f) == ev.satisfies(v, out)


def test_translation_equal_across_contraction():
    MR, MC = fixtures.mr(), fixtures.mc()
    for seed in range(40):
        f = random_formula(seed, ("C",), 2, ("p", "q"), ("a", "b"))
        assert cond_to_degrees(MR, "u1", f) == cond_to_degrees(MC, "v1", f)
        assert cond_to_degrees(MR, "u1", f, verbatim=True) == cond_to_degrees(MC, "v1", f, verbatim=True)


def test_knowledge_rewritten_through_conditional_belief():
    out = cond_to_degrees(fixtures.mc(), "v1", parse("K[a] p"))
    assert classify(out) <= {"D"}
    assert satisfies(fixtures.mc(), "v1", out)
