"""Instance construction: worked examples, factored combinatorial expansion,
continuous-observation discretization, and a seeded random corpus."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product
from typing import Mapping, NamedTuple, Sequence

from .model import BehaviorFunction, Scenario, require_valid

CAS_VARIANTS = ("f7-nothing", "f7-brake-nondet")

_CAS_ROWS: dict[str, tuple[object, object, object]] = {
    # name: (near, far, inter); strings are singletons, tuples non-deterministic
    "f1": ("turn", "brake", ("turn", "brake")),
    "f2": ("turn", "brake", "turn"),
    "f3": ("turn", "brake", "brake"),
    "f4": ("turn", "brake", "both"),
    "f5": ("turn", "nothing", "turn"),
    "f6": ("nothing", "brake", "brake"),
    "f7": ("turn", "turn", "turn"),
    "f8": ("brake", "brake", "brake"),
    "f9": ("nothing", "brake", "nothing"),
    "f10": ("turn", "nothing", "nothing"),
    "f11": ("nothing", "nothing", "nothing"),
    "f12": ("turn", "nothing", ("turn", "nothing")),
    "f13": ("nothing", "brake", ("nothing", "brake")),
}


def _as_set(cell: object) -> tuple[str, ...]:
    return cell if isinstance(cell, tuple) else (cell,)  # type: ignore[return-value]


def builtin_cas() -> Scenario:
    """The collision-avoidance rover example: 13 candidates over 3 test cases.

    A rover approaching an obstacle may turn, brake, do both, or nothing,
    depending on whether the obstacle is near, far, or at intermediate
    distance.  Candidates f1-f3 meet the requirements; f4-f13 are the
    plausible implementation mistakes.
    """
    functions = [
        BehaviorFunction.make(
            name, {"near": _as_set(near), "far": _as_set(far), "inter": _as_set(inter)}
        )
        for name, (near, far, inter) in _CAS_ROWS.items()
    ]
    scenario = Scenario.make(
        ["near", "far", "inter"],
        ["nothing", "turn", "brake", "both"],
        functions,
        ["f1", "f2", "f3"],
    )
    require_valid(scenario)
    return scenario


def cas_variant(which: str) -> Scenario:
    """The rover example with f7's far-obstacle row redefined.

    ``f7-nothing`` makes f7 answer turn-or-nothing to a far obstacle (still
    decidable in two tests); ``f7-brake-nondet`` makes it answer
    turn-or-brake, which hides f7 behind the correct candidates forever.
    """
    if which not in CAS_VARIANTS:
        raise ValueError(f"unknown variant {which!r}; expected one of {CAS_VARIANTS}")
    replacement = ("turn", "nothing") if which == "f7-nothing" else ("turn", "brake")
    base = builtin_cas()
    functions = [
        BehaviorFunction.make("f7", {**{i: f.table[i] for i in base.inputs}, "far": replacement})
        if f.name == "f7"
        else f
        for f in base.functions
    ]
    return Scenario(base.inputs, base.outputs, tuple(functions), base.correct)


# -- factored instance generation ------------------------------------------

# A fault assignment picks at most max_faults fault families and one option
# variant for each picked family.
FaultAssignment = tuple[tuple[str, str], ...]
BehaviorKey = tuple[tuple[str, ...], FaultAssignment]


class FactoredCounts(NamedTuple):
    correct: int
    fault_combinations: int
    total: int


@dataclass(frozen=True)
class FactoredSpec:
    """Compact description of an exploding candidate space.

    ``axes`` are the legitimate design choices (one option each per correct
    candidate); ``faults`` are the mistake families, each with one or more
    option variants; a candidate carries at most ``max_faults`` mistakes.
    ``behavior`` gives the full output table per (choice vector, fault
    assignment) pair and may be omitted when only counting.
    """

    axes: tuple[tuple[str, tuple[str, ...]], ...]
    faults: tuple[tuple[str, tuple[str, ...]], ...]
    max_faults: int
    inputs: tuple[str, ...] = ()
    outputs: tuple[str, ...] = ()
    behavior: Mapping[BehaviorKey, Mapping[str, frozenset[str]]] | None = None

    def validate(self) -> list[str]:
        problems: list[str] = []
        if not self.axes:
            problems.append("at least one choice axis is required")
        for name, options in self.axes:
            if not options:
                problems.append(f"axis {name!r} has no options")
        for name, options in self.faults:
            if not options:
                problems.append(f"fault family {name!r} has no option variants")
        axis_names = [name for name, _ in self.axes]
        if len(set(axis_names)) != len(axis_names):
            problems.append("duplicate axis names")
        fault_names = [name for name, _ in self.faults]
        if len(set(fault_names)) != len(fault_names):
            problems.append("duplicate fault family names")
        if self.max_faults < 0:
            problems.append("max_faults must be non-negative")
        return problems


def count_factored(spec: FactoredSpec) -> FactoredCounts:
    """Candidate-space sizes without materializing anything.

    Correct candidates: the product of the axis option counts.  Fault
    combinations: all ways to pick between zero and ``max_faults`` fault
    families with one option variant each (the degree-truncated elementary
    symmetric sum of the option counts).  Total: their product.
    """
    problems = spec.validate()
    if problems:
        raise ValueError("invalid factored spec: " + "; ".join(problems))
    correct = 1
    for _, options in spec.axes:
        correct *= len(options)
    # coeffs[j] = number of ways to pick j distinct families with one option each
    coeffs = [1]
    for _, options in spec.faults:
        nxt = coeffs + [0]
        for j in range(len(coeffs), 0, -1):
            nxt[j] += coeffs[j - 1] * len(options)
        coeffs = nxt
    fault_combinations = sum(coeffs[: spec.max_faults + 1])
    return FactoredCounts(correct, fault_combinations, correct * fault_combinations)


def _fault_assignments(spec: FactoredSpec) -> list[FaultAssignment]:
    families = list(spec.faults)
    assignments: list[FaultAssignment] = []
    for size in range(min(spec.max_faults, len(families)) + 1):
        for chosen in combinations(families, size):
            for picks in product(*(options for _, options in chosen)):
                assignments.append(tuple((name, pick) for (name, _), pick in zip(chosen, picks)))
    return assignments


def function_name_for(choices: Sequence[str], faults: FaultAssignment) -> str:
    name = "|".join(choices)
    for family, option in faults:
        name += f"+{family}={option}"
    return name


def expand_factored(spec: FactoredSpec, cap: int = 100_000) -> Scenario:
    """Materialize every candidate the spec describes, one function per
    (choice vector, fault assignment) pair; fault-free candidates are the
    correct set.  Refuses to expand past ``cap`` functions."""
    problems = spec.validate()
    if problems:
        raise ValueError("invalid factored spec: " + "; ".join(problems))
    counts = count_factored(spec)
    if counts.total > cap:
        raise ValueError(f"expansion of {counts.total} functions exceeds the cap of {cap}")
    if spec.behavior is None:
        raise ValueError("spec has no behavior tables; only counting is possible")
    functions = []
    correct_names = []
    for choices in product(*(options for _, options in spec.axes)):
        for assignment in _fault_assignments(spec):
            key = (tuple(choices), assignment)
            table = spec.behavior.get(key)
            if table is None:
                raise ValueError(
                    f"behavior table incomplete: no entry for choices={choices} faults={assignment}"
                )
            missing = [i for i in spec.inputs if i not in table]
            if missing:
                raise ValueError(
                    f"behavior table for choices={choices} faults={assignment} lacks inputs {missing}"
                )
            name = function_name_for(choices, assignment)
            functions.append(BehaviorFunction.make(name, {i: table[i] for i in spec.inputs}))
            if not assignment:
                correct_names.append(name)
    scenario = Scenario.make(spec.inputs, spec.outputs, functions, correct_names)
    require_valid(scenario)
    assert len(scenario.functions) == counts.total
    return scenario


def atm_paper_spec() -> FactoredSpec:
    """Count-only spec for the full teller-machine scenario.

    Six legitimate design choices (note mixing, remainder handling, empty-
    machine policy, insufficient-funds policy, confirmations, which ad to
    show) and nineteen single-variant mistake slots, at most five of which
    can co-occur.  Far too large to materialize; use :func:`count_factored`.
    """
    axes = [
        ("hundreds_mode", ("single_100", "two_50s")),
        ("remainder_mode", ("max_20s", "max_10s")),
        ("machine_empty_mode", ("give_all_left", "give_nothing")),
        ("low_balance_mode", ("give_balance", "give_nothing", "give_on_credit")),
        ("confirmation_mode", ("always_ask", "never_ask")),
        ("ad_mode", ("funds_ad", "loans_ad", "either_ad")),
    ]
    fault_slots = [
        "reuse_first_user",
        "stale_note_inventory",
        "stale_balance",
        "extra_biggest_note",
        "missing_biggest_note",
        "hundreds_alternating",
        "hundreds_skipped",
        "remainder_alternating",
        "remainder_skipped",
        "conflate_10_20",
        "conflate_10_50",
        "conflate_10_100",
        "conflate_20_50",
        "conflate_20_100",
        "conflate_50_100",
        "ignore_balance",
        "never_show_ad",
        "swap_confirmation",
        "repeat_first_confirmation",
    ]
    return FactoredSpec(
        axes=tuple((name, tuple(options)) for name, options in axes),
        faults=tuple((slot, (slot,)) for slot in fault_slots),
        max_faults=5,
    )


# -- miniature teller machine with behavior tables --------------------------

_MINI_TESTS: dict[str, tuple[int, int, int, tuple[int, ...]]] = {
    # name: (notes of 50, notes of 10, account balance, withdrawal requests)
    # w50_twice_few_notes starts with 9 tens so a machine that fails to track
    # its own deposit visibly runs dry on the second withdrawal.
    "w70": (2, 10, 500, (70,)),
    "w100_low_funds": (4, 10, 60, (100,)),
    "w50_twice_few_notes": (1, 9, 500, (50, 50)),
    "w50_twice_low_balance": (4, 10, 80, (50, 50)),
}


def _compose(amount: int, believed: dict[int, int], prefer_big: bool) -> dict[int, int] | None:
    order = (50, 10) if prefer_big else (10, 50)
    plan: dict[int, int] = {}
    rest = amount
    for denom in order:
        take = min(rest // denom, believed.get(denom, 0))
        if take:
            plan[denom] = take
            rest -= take * denom
    return plan if rest == 0 else None


def _mini_atm_output(choices: tuple[str, str], faults: tuple[str, ...], test: str) -> str:
    prefer_big = choices[0] == "prefer_50s"
    give_rest = choices[1] == "partial_on_low_balance"
    notes50, notes10, balance, requests = _MINI_TESTS[test]
    physical = {50: notes50, 10: notes10}
    believed = dict(physical)
    replies = []
    for requested in requests:
        amount = requested
        if balance < requested:
            amount = balance if give_rest else 0
        if amount == 0:
            replies.append("none")
            continue
        plan = _compose(amount, believed, prefer_big)
        if plan is None:
            replies.append("none")
            continue
        if "extra_note" in faults:
            biggest = max(plan)
            plan[biggest] += 1
        if any(plan[d] > physical[d] for d in plan):
            replies.append("err")
            continue
        for denom, count in plan.items():
            physical[denom] -= count
            if "stale_notes" not in faults:
                believed[denom] -= count
        if "stale_balance" not in faults:
            balance -= amount
        replies.append("+".join(f"{d}x{plan[d]}" for d in sorted(plan, reverse=True)))
    return ";".join(replies)


def mini_atm() -> FactoredSpec:
    """A materializable teller machine: 2 axes x 2 options, 3 unit fault
    families, at most 2 simultaneous faults, over 4 scripted test cases.

    Outputs encode the notes handed out per withdrawal ("50x1+10x2"),
    "none" for refusals, and "err" when the machine tries to hand out a
    note its deposit no longer holds.
    """
    axes = (
        ("note_mix", ("prefer_50s", "prefer_10s")),
        ("low_balance", ("partial_on_low_balance", "reject_on_low_balance")),
    )
    faults = (
        ("stale_notes", ("stale_notes",)),
        ("stale_balance", ("stale_balance",)),
        ("extra_note", ("extra_note",)),
    )
    spec = FactoredSpec(axes=axes, faults=faults, max_faults=2, inputs=tuple(_MINI_TESTS))
    behavior: dict[BehaviorKey, dict[str, frozenset[str]]] = {}
    outputs: list[str] = []
    seen: set[str] = set()
    for choices in product(*(options for _, options in axes)):
        for assignment in _fault_assignments(spec):
            fault_flags = tuple(option for _, option in assignment)
            table = {}
            for test in _MINI_TESTS:
                reply = _mini_atm_output(choices, fault_flags, test)
                table[test] = frozenset([reply])
                if reply not in seen:
                    seen.add(reply)
                    outputs.append(reply)
            behavior[(tuple(choices), assignment)] = table
    return FactoredSpec(
        axes=axes,
        faults=faults,
        max_faults=2,
        inputs=tuple(_MINI_TESTS),
        outputs=tuple(outputs),
        behavior=behavior,
    )


# -- continuous observations -------------------------------------------------


@dataclass(frozen=True)
class NumericFunction:
    name: str
    table: Mapping[str, tuple[float, ...]]


@dataclass(frozen=True)
class NumericScenario:
    """Scenario whose raw outputs are real measurements, read with a +/- margin."""

    inputs: tuple[str, ...]
    functions: tuple[NumericFunction, ...]
    correct: frozenset[str]
    margin: float

    def validate(self) -> list[str]:
        problems: list[str] = []
        if self.margin < 0:
            problems.append("margin must be non-negative")
        names = [f.name for f in self.functions]
        if len(set(names)) != len(names):
            problems.append("duplicate function names")
        for f in self.functions:
            for i in self.inputs:
                values = f.table.get(i)
                if not values:
                    problems.append(f"function {f.name!r} has no values for input {i!r}")
                    continue
                for v in values:
                    if not (float("-inf") < v < float("inf")):
                        problems.append(f"function {f.name!r} has non-finite value for {i!r}")
        for name in sorted(self.correct):
            if name not in names:
                problems.append(f"correct set names absent function {name!r}")
        return problems


def _round9(x: float) -> float:
    return round(x, 9)


def _format_bound(x: float) -> str:
    return repr(_round9(x))


def discretize_observations(ns: NumericScenario) -> Scenario:
    """Turn measurement intervals into abstract output symbols.

    Every value widens to [value - margin, value + margin].  Per input, the
    union of all those intervals is partitioned into maximal regions whose
    covering set of functions is constant; each region becomes one output
    symbol (named after its interval), and a function's image is the set of
    regions its own intervals touch.  Overlaps between margins are exactly
    where discretized candidates turn non-deterministic.
    """
    problems = ns.validate()
    if problems:
        raise ValueError("invalid numeric scenario: " + "; ".join(problems))

    outputs: list[str] = []
    tables: dict[str, dict[str, set[str]]] = {f.name: {} for f in ns.functions}
    for i in ns.inputs:
        intervals = []  # (lo, hi, owner)
        for f in ns.functions:
            for v in f.table[i]:
                intervals.append((_round9(v - ns.margin), _round9(v + ns.margin), f.name))
        points = sorted({p for lo, hi, _ in intervals for p in (lo, hi)})
        # Atoms alternate single points and the open gaps between them; a
        # region is a maximal run of adjacent atoms covered by the same
        # functions.  Degenerate margins make point atoms carry everything.
        atoms: list[tuple[float, float, bool, bool]] = []  # lo, hi, lo_closed, hi_closed
        for idx, p in enumerate(points):
            atoms.append((p, p, True, True))
            if idx + 1 < len(points):
                atoms.append((p, points[idx + 1], False, False))
        covered = []
        for lo, hi, lo_closed, hi_closed in atoms:
            # a closed [a, b] contains the whole atom iff a <= lo and hi <= b
            owners = frozenset(owner for a, b, owner in intervals if a <= lo and hi <= b)
            covered.append(((lo, hi, lo_closed, hi_closed), owners))
        regions: list[tuple[tuple[float, float, bool, bool], frozenset[str]]] = []
        for atom, owners in covered:
            if not owners:
                continue
            if regions and regions[-1][1] == owners and regions[-1][0][1] == atom[0]:
                (lo, _, lo_closed, _), _ = regions[-1]
                regions[-1] = ((lo, atom[1], lo_closed, atom[3]), owners)
            else:
                regions.append((atom, owners))
        for (lo, hi, lo_closed, hi_closed), owners in regions:
            left = "[" if lo_closed else "("
            right = "]" if hi_closed else ")"
            symbol = f"{i}:{left}{_format_bound(lo)},{_format_bound(hi)}{right}"
            outputs.append(symbol)
            for owner in owners:
                tables[owner].setdefault(i, set()).add(symbol)

    functions = [
        BehaviorFunction.make(f.name, {i: tables[f.name][i] for i in ns.inputs})
        for f in ns.functions
    ]
    scenario = Scenario.make(ns.inputs, outputs, functions, ns.correct)
    require_valid(scenario)
    return scenario


def random_scenario(
    seed: int,
    n_inputs: int,
    n_outputs: int,
    n_functions: int,
    n_correct: int,
    nondet_density: float,
) -> Scenario:
    """Seeded random scenario for test corpora; identical seeds give identical scenarios.

    Every table cell gets one output, plus each remaining output independently
    with probability ``nondet_density`` (zero density keeps the scenario
    deterministic).  The correct subset is a seeded sample of the names.
    """
    if min(n_inputs, n_outputs, n_functions) < 1:
        raise ValueError("need at least one input, output, and function")
    if not 0 <= n_correct <= n_functions:
        raise ValueError("n_correct must be between 0 and n_functions")
    if not 0.0 <= nondet_density <= 1.0:
        raise ValueError("nondet_density must be within [0, 1]")
    rng = random.Random(seed)
    inputs = [f"i{n}" for n in range(1, n_inputs + 1)]
    outputs = [f"o{n}" for n in range(1, n_outputs + 1)]
    names = [f"f{n}" for n in range(1, n_functions + 1)]
    functions = []
    for name in names:
        table = {}
        for i in inputs:
            cell = {rng.choice(outputs)}
            for o in outputs:
                if o not in cell and rng.random() < nondet_density:
                    cell.add(o)
            table[i] = cell
        functions.append(BehaviorFunction.make(name, table))
    correct = rng.sample(names, n_correct)
    scenario = Scenario.make(inputs, outputs, functions, correct)
    require_valid(scenario)
    return scenario
