"""A walk through the core objects: a model, its largest autobisimulation,
contraction and normalisation, and a formula that separates two worlds.

Run with ``python demos/tour.py``.
"""
from plausibility import fixtures
from plausibility.bisim import (bisimilar, contract, derived_relation, distinguishing_formula,
                                largest_autobisimulation, normalize)
from plausibility.formula import parse, to_text
from plausibility.model import dump_model, find_isomorphism
from plausibility.semantics import satisfies, spheres

ML, MC, MR = fixtures.ml(), fixtures.mc(), fixtures.mr()

print("ML has worlds", ", ".join(ML.worlds))
print("agent a cannot tell w1, w2, w3 apart; w1 is the most plausible of them")

Q = largest_autobisimulation(ML)
print("\nlargest autobisimulation:", Q.as_lists())
print("w1 and w3 look alike, yet the raw order puts w2 between them.")
print("the derived order for a lifts each world to the best world of its block:")
for w, v in sorted(derived_relation(ML, Q, "a")):
    if w != v:
        print(f"  {w} >= {v}")

quotient, names = contract(ML)
print("\ncontracting ML gives", len(quotient.worlds), "worlds:", ", ".join(quotient.worlds))
print("isomorphic to MC:", find_isomorphism(quotient, MC) is not None)
print("normalize(ML) isomorphic to MR:", find_isomorphism(normalize(ML), MR) is not None)

ok, cross = bisimilar((MR, "u1"), (MC, "v1"))
print("\n(MR, u1) and (MC, v1) bisimilar:", ok)
print("  cross relation:", ", ".join(f"{x}~{y}" for x, y in sorted(cross)))

f = distinguishing_formula(ML, "w1", "w2")
print("\nw1 and w2 are not bisimilar; a conditional-belief formula telling them apart:")
print("  ", to_text(f))
print("   true at w1:", satisfies(ML, "w1", f), " true at w2:", satisfies(ML, "w2", f))

box = parse("[][a] Khat[b] q")
print("\nsafe belief depends on which order it reads:")
print("  ML, w3 |=", to_text(box), "normal:", satisfies(ML, "w3", box), " raw:", satisfies(ML, "w3", box, "raw"))

print("\nbelief layers of a in MC:", [sorted(l) for l in spheres(MC, "a", "v1").layers])
print("\nthe contraction as JSON:")
print(dump_model(quotient))
