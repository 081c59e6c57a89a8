"""The two compilers that import hardness into the testing world.

First: minimum set cover becomes a deterministic scenario with a single
correct candidate, where the optimal adaptive depth IS the optimal cover
size; the greedy cover gives a certified logarithmic approximation.

Second: a quantified boolean formula becomes a non-deterministic scenario
plus a depth budget, decidable exactly when the formula is true.  The same
matrix flips from true to false when its quantifier pairs are swapped, and
the compiled scenarios follow suit.

Run:  python demos/02_hardness_reductions.py
"""

from adaptest import (
    QbfFormula,
    SetCoverInstance,
    decide,
    greedy_cover,
    min_set_cover,
    msc_to_scenario,
    optimize,
    qbf_eval,
    qbf_to_scenario,
    scenario_to_msc,
)
from adaptest.oracle import literal as L

print("== Set cover as a testing problem ==")
instance = SetCoverInstance.make(
    ["e1", "e2", "e3", "e4", "e5"],
    {
        "S1": ["e1", "e2"],
        "S2": ["e2", "e3", "e4"],
        "S3": ["e4", "e5"],
        "S4": ["e1", "e5"],
        "S5": ["e3"],
    },
)
exact = min_set_cover(instance)
print(f"instance: 5 elements, 5 sets; exact minimum cover = {exact}")

reduced = msc_to_scenario(instance)
scenario = reduced.scenario
print(f"compiled scenario: {len(scenario.functions)} candidates over {len(scenario.inputs)} inputs")
print(f"optimal adaptive depth = {optimize(scenario)}  (equals the cover optimum)")

suite = greedy_cover(scenario)
print(f"greedy preset suite: {suite} (size {len(suite)}, optimum {exact})")

back = scenario_to_msc(scenario)
print(f"compiled back to set cover: optimum still {min_set_cover(back)}")

print()
print("== Quantified formulas as testing problems ==")
# matrix: (x2 or not y1) and (not x2 or y1), i.e. "x2 must equal y1"
original = QbfFormula.make(2, [[L("x", 2), L("y", 1, False)], [L("x", 2, False), L("y", 1)]])
swapped = QbfFormula.make(2, [[L("x", 1), L("y", 2, False)], [L("x", 1, False), L("y", 2)]])

for label, formula in (("original order", original), ("swapped order", swapped)):
    compiled = qbf_to_scenario(formula)
    s = compiled.scenario
    truth = qbf_eval(formula)
    decided = decide(s, compiled.budget)
    print(f"{label}: formula true? {truth};"
          f" compiled ({len(s.functions)} candidates, {len(s.inputs)} inputs,"
          f" budget {compiled.budget}) decidable? {decided}")

print()
print("Gadget bookkeeping of the original formula's compilation:")
for name, origin in qbf_to_scenario(original).provenance.items():
    print(f"  {name:<6} {origin}")
