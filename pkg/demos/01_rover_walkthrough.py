"""Walk through the collision-avoidance rover scenario end to end.

Thirteen candidate behaviors, three of them correct.  We ask: how many
adaptive tests are needed in the worst case, why starting with the wrong
test costs an extra one, and what small redefinitions do to decidability.

Run:  python demos/01_rover_walkthrough.py
"""

from adaptest import (
    SolveConfig,
    builtin_cas,
    cas_variant,
    decide,
    extract_strategy,
    optimize,
    validate_strategy,
)
from adaptest.formats import tree_to_dot
from adaptest.solver import Leaf

cas = builtin_cas()

print("The rover scenario:")
print(f"  test cases : {', '.join(cas.inputs)}")
print(f"  reactions  : {', '.join(cas.outputs)}")
print(f"  candidates : {len(cas.functions)} ({len(cas.correct)} correct)")
for f in cas.functions:
    cells = "  ".join(f"{i}->{{{','.join(cas.sort_outputs(f.table[i]))}}}" for i in cas.inputs)
    marker = "correct  " if f.name in cas.correct else "incorrect"
    print(f"    {f.name:<4} {marker} {cells}")

print()
best = optimize(cas)
print(f"Minimum worst-case number of adaptive tests: {best}")
print(f"Can one test ever be enough?  decide(k=1) -> {decide(cas, 1)}")

print()
print("The optimal plan (leaves show the verdict and the surviving candidates):")


def show(node, indent="  "):
    if isinstance(node, Leaf):
        names = ",".join(sorted(node.consistent))
        print(f"{indent}=> {node.verdict.value.upper()} {{{names}}}")
        return
    print(f"{indent}apply {node.input}:")
    for output, child in node.children.items():
        print(f"{indent}  if {output}:")
        show(child, indent + "    ")


tree = extract_strategy(cas, best)
show(tree)
assert validate_strategy(cas, tree, best)

print()
print("Order matters. Forcing the first test away from the optimum:")
for first in ("near", "far"):
    two = decide(cas, 2, SolveConfig(forced_prefix=(first,)))
    three = decide(cas, 3, SolveConfig(forced_prefix=(first,)))
    print(f"  start with {first:<5}: two tests suffice? {two}; three? {three}")

print()
print("Fragility under redefinition of candidate f7:")
print(f"  f7 answers turn-or-nothing to far : optimum {optimize(cas_variant('f7-nothing'))}")
hiding = optimize(cas_variant("f7-brake-nondet"))
print(f"  f7 answers turn-or-brake to far   : optimum {hiding} "
      "(it can now mimic a correct candidate forever)")

print()
print("Graphviz export of the optimal plan (pipe into `dot -Tpng`):")
print(tree_to_dot(tree))
