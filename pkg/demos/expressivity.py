"""Pairs of pointed models that one language separates and another cannot.

For each pair we show the separating formula, then sample random formulas of the
weaker language and count disagreements (there are none).
"""
import random

from plausibility import fixtures
from plausibility.formula import parse, to_text
from plausibility.oracle import random_formula
from plausibility.semantics import Evaluator, satisfies


def sample_agreement(p1, p2, language, props, n=300, max_degree=3):
    (m1, w1), (m2, w2) = p1, p2
    e1, e2 = Evaluator(m1), Evaluator(m2)
    rng = random.Random(1)
    return sum(e1.satisfies(w1, f) != e2.satisfies(w2, f)
               for f in (random_formula(rng, language, 3, props, ("a",), max_degree) for _ in range(n)))


def show(title, p1, p2, separator, language, props, **kw):
    f = parse(separator)
    (m1, w1), (m2, w2) = p1, p2
    print(title)
    print(f"  {to_text(f)}: {satisfies(m1, w1, f)} at {w1}, {satisfies(m2, w2, f)} at {w2}")
    print(f"  disagreements on 300 random {'/'.join(language)} formulas:",
          sample_agreement(p1, p2, language, props, **kw))


show("safe belief sees what conditional belief and degrees miss",
     (fixtures.exp_cd_m(), "w3"), (fixtures.exp_cd_mprime(), "w3'"), "<>[a] p", ("C", "D"), ("p",))
show("degrees see what safe belief misses",
     (fixtures.exp_s_m(), "x1"), (fixtures.exp_s_mprime(), "x'"), "B[a # 1] p", ("S",), ("p",))
for k in (1, 3, 5):
    props = [f"p{i}" for i in range(k + 1)] + ["q", "r"]
    show(f"conditional belief sees what degrees up to {k} miss",
         (fixtures.mk(k), "w0"), (fixtures.nk(k), "w0'"), "B[a | q] r", ("D",), props, max_degree=k)
