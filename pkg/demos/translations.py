"""Translating conditional belief into safe belief and into degrees of belief.

The safe-belief rewrite is global.  The degrees translation is built for one
pointed model; the literal version with big disjunctions over a class can go
wrong, and the default rendering avoids that.
"""
from plausibility import fixtures
from plausibility.formula import parse, size, to_text
from plausibility.oracle import random_model
from plausibility.semantics import extension, satisfies
from plausibility.translate import cond_to_degrees, cond_to_safe

MC = fixtures.mc()
g = parse("B[a | Khat[b] q] B[b] q")
s = cond_to_safe(g)
print("input:          ", to_text(g))
print("safe belief:    ", to_text(s))
print("same extension on MC:", extension(MC, g) == extension(MC, s))

d = cond_to_degrees(MC, "v1", g)
print("\ndegrees at (MC, v1), size", size(d))
print("  ", to_text(d))
print("  agrees at v1:", satisfies(MC, "v1", g) == satisfies(MC, "v1", d))
print("  same output at the bisimilar point (MR, u1):", cond_to_degrees(fixtures.mr(), "u1", g) == d)

m = random_model(41)
bad = parse("B[b | B[a|p] p] (B[a|p] p -> K[b] ~p)")
literal = cond_to_degrees(m, "w1", bad, verbatim=True)
fixed = cond_to_degrees(m, "w1", bad)
print("\na case where the literal disjunctions fail, random model 41 at w1:")
print("  input holds:           ", satisfies(m, "w1", bad))
print("  literal form holds:    ", satisfies(m, "w1", literal))
print("  default form holds:    ", satisfies(m, "w1", fixed))
