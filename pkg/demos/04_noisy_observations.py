"""Measurements read with an error margin become non-deterministic outputs.

Two candidates answer 1.4 and 1.5 seconds; the tester's stopwatch is only
good to +/-0.2.  Widening each value into an interval and cutting the union
where the covering candidates change yields three abstract outcomes: the
shared middle band (seen from either candidate) and two distinctive tails.

Run:  python demos/04_noisy_observations.py
"""

from adaptest import discretize_observations, optimize
from adaptest.generators import NumericFunction, NumericScenario

ns = NumericScenario(
    inputs=("a",),
    functions=(
        NumericFunction("f", {"a": (1.4,)}),
        NumericFunction("fp", {"a": (1.5,)}),
    ),
    correct=frozenset(["f"]),
    margin=0.2,
)

print("raw measurements: f answers 1.4, fp answers 1.5; margin +/-0.2")
scenario = discretize_observations(ns)
print("derived outcome regions:")
for symbol in scenario.outputs:
    print(f"  {symbol}")
for f in scenario.functions:
    print(f"candidate {f.name} may be observed as: {sorted(f.table['a'])}")

print(f"\ncan one test decide correctness? optimum = {optimize(scenario)}")
print("(no guarantee: the shared middle band hides the candidates from each other)")

print()
print("Shrinking the margin to 0.04 separates the intervals again:")
sharp = discretize_observations(
    NumericScenario(ns.inputs, ns.functions, ns.correct, margin=0.04)
)
for symbol in sharp.outputs:
    print(f"  {symbol}")
print(f"optimum with the sharper stopwatch = {optimize(sharp)}")
