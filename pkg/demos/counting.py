"""Raw safe belief can count alternations along a plausibility chain.

Under the raw order the formula phi_i holds at the i-th world of the chain and
phi_{i+1} does not, so no two chain positions agree.  The bisimulation used here
collapses every chain with at least two worlds to two worlds, one per valuation.
"""
from plausibility import fixtures
from plausibility.bisim import contract
from plausibility.formula import to_text
from plausibility.semantics import demey_counting_formula, satisfies

print("phi_3 =", to_text(demey_counting_formula(3)))
for i in range(1, 7):
    chain = fixtures.demey_chain(i)
    w = f"w{i}"
    here = satisfies(chain, w, demey_counting_formula(i), "raw")
    beyond = satisfies(chain, w, demey_counting_formula(i + 1), "raw")
    print(f"chain {i}: phi_{i} at {w} {here}, phi_{i + 1} at {w} {beyond},"
          f" contraction has {len(contract(chain)[0].worlds)} worlds")
