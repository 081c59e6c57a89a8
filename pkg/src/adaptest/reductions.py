"""Compilers between set cover, quantified boolean formulas, and testing scenarios.

Three constructions, each preserving the quantity that matters:

* a set-cover instance becomes a deterministic scenario whose minimum
  strategy depth equals the minimum cover size (one input per set, a single
  always-0 correct function, one incorrect function per element);
* the reverse direction turns any deterministic single-correct scenario into
  a cover instance with the same optimum, which also licenses the greedy
  logarithmic approximation;
* a quantified boolean formula becomes a non-deterministic scenario plus a
  depth budget that is decidable exactly when the formula is true.  Inputs
  come in four versions per existential variable (plain/negated crossed with
  primed/unprimed): the negation axis encodes the variable's value, while
  the primed axis, together with the order-gadget functions, forces the
  tester to commit to the variables in quantifier order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import BehaviorFunction, Scenario, is_deterministic, require_valid
from .oracle import Clause, OracleSizeError, QbfFormula, SetCoverInstance, qbf_eval
from .solver import SolveConfig, decide

OUT_ZERO = "0"
OUT_ONE = "1"
OUT_FLAG = "-1"


class InfeasibleScenarioError(Exception):
    """Some incorrect candidate can never be told apart from the correct one."""


@dataclass(frozen=True)
class ReducedScenario:
    """A compiled scenario plus bookkeeping back to the source instance.

    ``budget`` is the depth bound that travels with the formula reduction
    (cover reductions carry none).  ``provenance`` maps every generated
    input/function name to a human-readable description of its origin.
    """

    scenario: Scenario
    provenance: dict[str, str] = field(compare=False)
    budget: int | None = None


def msc_to_scenario(instance: SetCoverInstance) -> ReducedScenario:
    """One input per set, a constant-0 correct function, one incorrect function per element.

    The incorrect function for element e answers 1 exactly on the inputs
    whose set contains e, so applying an input "tests" membership and the
    minimum strategy depth equals the minimum cover size.
    """
    problems = instance.validate()
    if problems:
        raise ValueError("invalid set-cover instance: " + "; ".join(problems))
    provenance: dict[str, str] = {}
    inputs = []
    for name, _ in instance.sets:
        inputs.append(name)
        provenance[name] = f"set {name}"
    functions = [BehaviorFunction.make("g", {i: [OUT_ZERO] for i in inputs})]
    provenance["g"] = "the single correct function (always 0)"
    for element in instance.elements:
        fname = f"f_{element}"
        table = {
            name: [OUT_ONE if element in members else OUT_ZERO]
            for name, members in instance.sets
        }
        functions.append(BehaviorFunction.make(fname, table))
        provenance[fname] = f"element {element}"
    scenario = Scenario.make(inputs, [OUT_ZERO, OUT_ONE], functions, ["g"])
    require_valid(scenario)
    return ReducedScenario(scenario, provenance)


def scenario_to_msc(scenario: Scenario) -> SetCoverInstance:
    """Inverse compilation for deterministic scenarios with a single correct function.

    Each input becomes the set of incorrect functions it separates from the
    correct one; a minimum cover is a minimum preset test suite.  Raises
    :class:`InfeasibleScenarioError` when some incorrect function agrees with
    the correct one everywhere (no suite can ever rule it out).
    """
    require_valid(scenario)
    if not is_deterministic(scenario):
        raise ValueError("reduction to set cover requires a deterministic scenario")
    if len(scenario.correct) != 1:
        raise ValueError("reduction to set cover requires exactly one correct function")
    (g_name,) = scenario.correct
    g = scenario.by_name[g_name]
    elements = [f.name for f in scenario.functions if f.name != g_name]
    sets = {
        i: frozenset(
            f.name
            for f in scenario.functions
            if f.name != g_name and f.table[i] != g.table[i]
        )
        for i in scenario.inputs
    }
    covered = set().union(*sets.values()) if sets else set()
    stranded = [e for e in elements if e not in covered]
    if stranded:
        raise InfeasibleScenarioError(
            "indistinguishable from the correct function: " + ", ".join(stranded)
        )
    return SetCoverInstance.make(elements, sets)


def greedy_cover(scenario: Scenario) -> list[str]:
    """Greedy preset suite: repeatedly apply the input ruling out the most survivors.

    Ties break toward earlier inputs.  The suite distinguishes every
    incorrect function from the correct one and its size is within a
    harmonic-number factor of the optimal adaptive depth.
    """
    instance = scenario_to_msc(scenario)
    remaining = set(instance.elements)
    sets_in_order = list(instance.sets)
    picked: list[str] = []
    while remaining:
        best_name, best_members, best_gain = "", frozenset(), 0
        for name, members in sets_in_order:
            gain = len(members & remaining)
            if gain > best_gain:  # strict: earliest input wins ties
                best_name, best_members, best_gain = name, members, gain
        if best_gain == 0:  # cannot happen on validated instances
            raise InfeasibleScenarioError("uncoverable elements remain")
        picked.append(best_name)
        remaining -= best_members
        sets_in_order = [(n, m) for n, m in sets_in_order if n != best_name]
    return picked


def _variable_inputs(j: int) -> tuple[str, str, str, str]:
    """The four input versions for existential variable j: plain, negated, primed, negated-primed."""
    return (f"x{j}", f"nx{j}", f"xp{j}", f"nxp{j}")


def _clause_cell(clause: Clause, j: int, positive: bool) -> list[str]:
    """Reply of a clause function to an input asserting variable j has the given polarity.

    Case order matters: an input directly satisfying the clause (or a clause
    containing both polarities of the universal variable) answers the flag
    output; otherwise a single universal literal pins the answer to the value
    that *fails* it; otherwise the cell is a free {0, 1}.
    """
    if ("x", j, positive) in clause:
        return [OUT_FLAG]
    if ("y", j, True) in clause and ("y", j, False) in clause:
        return [OUT_FLAG]
    if ("y", j, True) in clause:
        return [OUT_ZERO]
    if ("y", j, False) in clause:
        return [OUT_ONE]
    return [OUT_ZERO, OUT_ONE]


def qbf_to_scenario(formula: QbfFormula) -> ReducedScenario:
    """Compile a formula into (scenario, depth budget) with matching decidability.

    Sizes are exact: 2k + n functions over 4k inputs and 3 outputs, where k
    is the quantifier-pair count and n the clause count.  The single correct
    function answers {0, 1} everywhere and never produces the flag output.
    """
    problems = formula.validate()
    if problems:
        raise ValueError("invalid formula: " + "; ".join(problems))
    k = formula.k
    provenance: dict[str, str] = {}
    inputs: list[str] = []
    for j in range(1, k + 1):
        plain, negated, primed, negated_primed = _variable_inputs(j)
        inputs += [plain, negated, primed, negated_primed]
        provenance[plain] = f"variable {j} := true (plain)"
        provenance[negated] = f"variable {j} := false (plain)"
        provenance[primed] = f"variable {j} := true (primed)"
        provenance[negated_primed] = f"variable {j} := false (primed)"

    both = [OUT_ZERO, OUT_ONE]
    functions = [BehaviorFunction.make("g", {i: both for i in inputs})]
    provenance["g"] = "the single correct function (free over {0,1})"

    for c_index, clause in enumerate(formula.clauses, start=1):
        table: dict[str, list[str]] = {}
        for j in range(1, k + 1):
            plain, negated, primed, negated_primed = _variable_inputs(j)
            positive_cell = _clause_cell(clause, j, True)
            negative_cell = _clause_cell(clause, j, False)
            table[plain] = positive_cell
            table[primed] = positive_cell
            table[negated] = negative_cell
            table[negated_primed] = negative_cell
        name = f"f_c{c_index}"
        functions.append(BehaviorFunction.make(name, table))
        provenance[name] = f"clause {c_index}"

    anchor_table = {i: both for i in inputs}
    for version in _variable_inputs(1):
        anchor_table[version] = [OUT_FLAG]
    functions.append(BehaviorFunction.make("f0", anchor_table))
    provenance["f0"] = "order anchor (discarded by any version of variable 1)"

    for position in range(1, k):
        plain_table = {i: both for i in inputs}
        primed_table = {i: both for i in inputs}
        for version in _variable_inputs(position):
            plain_table[version] = [OUT_ZERO]
            primed_table[version] = [OUT_ONE]
        next_plain, next_negated, next_primed, next_negated_primed = _variable_inputs(position + 1)
        plain_table[next_primed] = [OUT_FLAG]
        plain_table[next_negated_primed] = [OUT_FLAG]
        primed_table[next_plain] = [OUT_FLAG]
        primed_table[next_negated] = [OUT_FLAG]
        plain_name = f"f_{position}"
        primed_name = f"fp_{position}"
        functions.append(BehaviorFunction.make(plain_name, plain_table))
        functions.append(BehaviorFunction.make(primed_name, primed_table))
        provenance[plain_name] = f"order gadget at position {position} (killed by a primed version of variable {position + 1})"
        provenance[primed_name] = f"order gadget at position {position} (killed by a plain version of variable {position + 1})"

    scenario = Scenario.make(inputs, [OUT_ZERO, OUT_ONE, OUT_FLAG], functions, ["g"])
    require_valid(scenario)
    assert len(scenario.functions) == 2 * k + len(formula.clauses)
    assert len(scenario.inputs) == 4 * k
    return ReducedScenario(scenario, provenance, budget=k)


def check_reduction_equivalence(formula: QbfFormula, *, max_k: int = 3) -> bool:
    """True iff direct evaluation and the compiled scenario's decidability agree."""
    if formula.k > max_k:
        raise OracleSizeError(f"k={formula.k} exceeds the equivalence-check guard ({max_k})")
    reduced = qbf_to_scenario(formula)
    return qbf_eval(formula) == decide(reduced.scenario, reduced.budget, SolveConfig())
