"""Candidate spaces that explode from compact descriptions.

A teller machine's tester lists a handful of legitimate design choices and
mistake types; combining them yields millions of candidate behaviors.  The
full machine is count-only; a miniature version with explicit behavior
tables is materialized and solved outright.

Run:  python demos/03_factored_teller_machine.py
"""

from adaptest import count_factored, expand_factored, extract_strategy, mini_atm, optimize
from adaptest.generators import atm_paper_spec

print("== The full teller machine (count-only) ==")
spec = atm_paper_spec()
print("design choice axes:")
for name, options in spec.axes:
    print(f"  {name:<22} {len(options)} options")
print(f"mistake slots: {len(spec.faults)}, at most {spec.max_faults} simultaneously")
counts = count_factored(spec)
print(f"correct candidates        : {counts.correct}")
print(f"fault combinations        : {counts.fault_combinations}")
print(f"total candidate behaviors : {counts.total}")

print()
print("== The miniature machine (fully materialized) ==")
mini = mini_atm()
mini_counts = count_factored(mini)
scenario = expand_factored(mini)
print(f"counts: {mini_counts.correct} correct x {mini_counts.fault_combinations} fault combos "
      f"= {mini_counts.total} candidates")
print(f"scripted test cases: {', '.join(scenario.inputs)}")
print(f"distinct observable outcomes: {len(scenario.outputs)}")

sample = [f for f in scenario.functions if f.name.startswith("prefer_50s|partial")][:5]
print("a few candidates and their replies to the four test cases:")
for f in sample:
    marker = "correct  " if f.name in scenario.correct else "incorrect"
    replies = " | ".join(next(iter(f.table[i])) for i in scenario.inputs)
    print(f"  {marker} {f.name}")
    print(f"            {replies}")

best = optimize(scenario)
print(f"\nminimum adaptive tests to classify any of the {mini_counts.total} machines: {best}")
tree = extract_strategy(scenario, best)
print(f"the optimal plan opens with test case: {tree.input}")
