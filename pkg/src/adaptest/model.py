"""Core model: candidate behavior functions, scenarios, histories, verdicts.

A *scenario* bundles a finite list of candidate behavior functions (every
way the black box under test could behave), a subset of them considered
correct, and the input/output alphabets everything is defined over.  Each
candidate maps every input to a non-empty set of outputs it may produce;
a singleton set on every input makes the candidate deterministic.

Everything in this module is an immutable value with pure operations, so
scenarios can be shared freely across threads and solver runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Mapping, Sequence

# A history is the record of a testing interaction: (input, observed output)
# pairs in the order they were applied.
HistoryStep = tuple[str, str]
History = Sequence[HistoryStep]


class HypothesisViolationError(Exception):
    """The observations match no candidate: the black box is outside the model."""


class Verdict(Enum):
    CORRECT = "correct"
    INCORRECT = "incorrect"
    UNDECIDED = "undecided"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


@dataclass(frozen=True)
class BehaviorFunction:
    """One candidate definition of the black box.

    ``table`` maps every input symbol to the non-empty set of outputs this
    candidate may reply with.  The table is treated as immutable.
    """

    name: str
    table: Mapping[str, frozenset[str]]

    @staticmethod
    def make(name: str, table: Mapping[str, Iterable[str]]) -> "BehaviorFunction":
        return BehaviorFunction(name, {i: frozenset(os) for i, os in table.items()})

    def outputs(self, input_symbol: str) -> frozenset[str]:
        return self.table[input_symbol]

    def is_deterministic(self) -> bool:
        return all(len(os) == 1 for os in self.table.values())


@dataclass(frozen=True)
class Scenario:
    """A testing scenario: candidates plus the subset considered correct.

    ``inputs`` and ``outputs`` are the declared alphabets; their declaration
    order is the total order used everywhere (solver exploration, canonical
    serialization, tie-breaking).
    """

    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    functions: tuple[BehaviorFunction, ...]
    correct: frozenset[str]

    @staticmethod
    def make(
        inputs: Iterable[str],
        outputs: Iterable[str],
        functions: Iterable[BehaviorFunction],
        correct: Iterable[str],
    ) -> "Scenario":
        return Scenario(tuple(inputs), tuple(outputs), tuple(functions), frozenset(correct))

    @cached_property
    def by_name(self) -> dict[str, BehaviorFunction]:
        return {f.name: f for f in self.functions}

    @cached_property
    def function_names(self) -> tuple[str, ...]:
        return tuple(f.name for f in self.functions)

    @cached_property
    def all_names(self) -> frozenset[str]:
        return frozenset(self.function_names)

    @cached_property
    def incorrect(self) -> frozenset[str]:
        return self.all_names - self.correct

    @cached_property
    def input_index(self) -> dict[str, int]:
        return {i: n for n, i in enumerate(self.inputs)}

    @cached_property
    def output_index(self) -> dict[str, int]:
        return {o: n for n, o in enumerate(self.outputs)}

    def sort_outputs(self, outs: Iterable[str]) -> list[str]:
        """Outputs in alphabet order (the canonical branch enumeration order)."""
        return sorted(outs, key=self.output_index.__getitem__)

    def producible_outputs(self, names: Iterable[str], input_symbol: str) -> list[str]:
        """Union of the candidates' replies to ``input_symbol``, alphabet-ordered."""
        union: set[str] = set()
        for name in names:
            union |= self.by_name[name].table[input_symbol]
        return self.sort_outputs(union)


def validate_scenario(scenario: Scenario) -> list[str]:
    """Check every structural invariant; return human-readable violations.

    An empty list means the scenario is well formed.  Each violation names
    the offending function/input/symbol so callers can surface it directly.
    """
    violations: list[str] = []
    seen_inputs: set[str] = set()
    for symbol in scenario.inputs:
        if not symbol:
            violations.append("input symbol with empty label")
        if symbol in seen_inputs:
            violations.append(f"duplicate input symbol {symbol!r}")
        seen_inputs.add(symbol)
    seen_outputs: set[str] = set()
    for symbol in scenario.outputs:
        if not symbol:
            violations.append("output symbol with empty label")
        if symbol in seen_outputs:
            violations.append(f"duplicate output symbol {symbol!r}")
        seen_outputs.add(symbol)

    seen_names: set[str] = set()
    for f in scenario.functions:
        if not f.name:
            violations.append("function with empty name")
        if f.name in seen_names:
            violations.append(f"duplicate function name {f.name!r}")
        seen_names.add(f.name)
        for i in scenario.inputs:
            if i not in f.table:
                violations.append(f"function {f.name!r} undefined for input {i!r}")
            elif not f.table[i]:
                violations.append(f"function {f.name!r} maps input {i!r} to the empty set")
        for i, outs in f.table.items():
            if i not in seen_inputs:
                violations.append(f"function {f.name!r} references unknown input {i!r}")
            for o in outs:
                if o not in seen_outputs:
                    violations.append(
                        f"function {f.name!r} yields unknown output {o!r} for input {i!r}"
                    )

    for name in sorted(scenario.correct):
        if name not in seen_names:
            violations.append(f"correct set names absent function {name!r}")
    return violations


def require_valid(scenario: Scenario) -> None:
    violations = validate_scenario(scenario)
    if violations:
        raise ValueError("invalid scenario: " + "; ".join(violations))


def is_deterministic(scenario: Scenario) -> bool:
    """True when every candidate replies with exactly one output everywhere."""
    return all(f.is_deterministic() for f in scenario.functions)


def consistent_set(scenario: Scenario, history: History) -> frozenset[str]:
    """Names of the candidates compatible with every observed (input, output) pair.

    An empty history filters nothing and returns the full collection.  The
    result only ever shrinks as the history grows.
    """
    names = set(scenario.function_names)
    for input_symbol, output_symbol in history:
        if input_symbol not in scenario.input_index:
            raise ValueError(f"unknown input symbol {input_symbol!r}")
        if output_symbol not in scenario.output_index:
            raise ValueError(f"unknown output symbol {output_symbol!r}")
        names = {
            n for n in names if output_symbol in scenario.by_name[n].table[input_symbol]
        }
    return frozenset(names)


def verdict_of(scenario: Scenario, names: frozenset[str] | set[str]) -> Verdict:
    """Classify a consistent set: all correct, all incorrect, or still mixed.

    Raises :class:`HypothesisViolationError` on an empty set, which means the
    real black box matches no candidate at all.
    """
    if not names:
        raise HypothesisViolationError(
            "consistent set is empty: observed behavior matches no candidate"
        )
    if frozenset(names) <= scenario.correct:
        return Verdict.CORRECT
    if not (frozenset(names) & scenario.correct):
        return Verdict.INCORRECT
    return Verdict.UNDECIDED


def forces_verdict(scenario: Scenario, names: frozenset[str]) -> bool:
    """True when ``names`` is entirely correct or entirely incorrect.

    The empty set counts as forced (vacuously uniform); it never arises from
    branch filtering because branches follow producible outputs only.
    """
    return names <= scenario.correct or not (names & scenario.correct)
