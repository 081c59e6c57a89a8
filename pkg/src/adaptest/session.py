"""Live testing sessions: track what a real black box has revealed so far.

A session holds the scenario, the applied (input, output) history, and the
candidates still consistent with it.  The engine is a tracker, not an
enforcer: testers may apply inputs in any order, repeat them, and deviate
from recommendations.  States are immutable; ``observe`` returns a new one.
Serializing concurrent mutations of a shared session is the caller's job
(the HTTP service keeps one lock per session).
"""

from __future__ import annotations

import math
import time
import uuid
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable

from . import advisor
from .model import (
    BehaviorFunction,
    HistoryStep,
    Scenario,
    Verdict,
    require_valid,
    verdict_of,
)
from .solver import NodeBudgetExceeded, SolveConfig, _Search

# Exact recommendations give up (and fall back to the heuristic advisor) once
# the per-request search crosses this many nodes.
EXACT_NODE_GUARD = 1_500_000
FALLBACK_DEPTH = 3


class TerminatedSessionError(Exception):
    """Operation requires a running session, but this one already finished."""


class SessionStatus(Enum):
    RUNNING = "running"
    VERDICT_CORRECT = "verdict_correct"
    VERDICT_INCORRECT = "verdict_incorrect"
    HYPOTHESIS_VIOLATED = "hypothesis_violated"
    # Reserved marker for session stores that want to flag sessions whose
    # residual scenario admits no strategy; the engine itself never sets it
    # (feasibility() reports the fact without terminating the session).
    INFEASIBLE = "infeasible"

    @property
    def terminal(self) -> bool:
        return self is not SessionStatus.RUNNING


_VERDICT_STATUS = {
    Verdict.CORRECT: SessionStatus.VERDICT_CORRECT,
    Verdict.INCORRECT: SessionStatus.VERDICT_INCORRECT,
    Verdict.UNDECIDED: SessionStatus.RUNNING,
}


def _new_id() -> str:
    return uuid.uuid4().hex[:12]


@dataclass(frozen=True)
class SessionState:
    """Snapshot of one session.  ``id`` and timestamps are excluded from equality."""

    scenario: Scenario
    history: tuple[HistoryStep, ...]
    consistent: frozenset[str]
    status: SessionStatus
    violation: HistoryStep | None = None
    id: str = field(compare=False, default_factory=_new_id)
    created: float = field(compare=False, default_factory=time.time)
    updated: float = field(compare=False, default_factory=time.time)

    @property
    def used_inputs(self) -> frozenset[str]:
        return frozenset(i for i, _ in self.history)

    @property
    def unused_inputs(self) -> tuple[str, ...]:
        used = self.used_inputs
        return tuple(i for i in self.scenario.inputs if i not in used)


def create_session(scenario: Scenario) -> SessionState:
    """Open a session over the full collection; may terminate immediately
    when the collection is already uniformly correct or incorrect."""
    require_valid(scenario)
    if not scenario.functions:
        raise ValueError("cannot run a session over a scenario with no candidates")
    names = scenario.all_names
    return SessionState(
        scenario=scenario,
        history=(),
        consistent=names,
        status=_VERDICT_STATUS[verdict_of(scenario, names)],
    )


def observe(state: SessionState, input_symbol: str, output_symbol: str) -> SessionState:
    """Record one applied input and its observed output.

    Repeated and non-recommended inputs are fine.  An output no surviving
    candidate can produce ends the session as a hypothesis violation: the
    box is outside the modeled collection, and the offending pair is kept.
    """
    if state.status.terminal:
        raise TerminatedSessionError(f"session is {state.status.value}, not running")
    if input_symbol not in state.scenario.input_index:
        raise ValueError(f"unknown input symbol {input_symbol!r}")
    if output_symbol not in state.scenario.output_index:
        raise ValueError(f"unknown output symbol {output_symbol!r}")
    by_name = state.scenario.by_name
    survivors = frozenset(
        n for n in state.consistent if output_symbol in by_name[n].table[input_symbol]
    )
    history = state.history + ((input_symbol, output_symbol),)
    if not survivors:
        return replace(
            state,
            history=history,
            consistent=survivors,
            status=SessionStatus.HYPOTHESIS_VIOLATED,
            violation=(input_symbol, output_symbol),
            updated=time.time(),
        )
    return replace(
        state,
        history=history,
        consistent=survivors,
        status=_VERDICT_STATUS[verdict_of(state.scenario, survivors)],
        updated=time.time(),
    )


def replay_session(scenario: Scenario, history: Iterable[HistoryStep], session_id: str | None = None) -> SessionState:
    """Rebuild a session from an exported history; equal to the original
    state up to id and timestamps."""
    state = create_session(scenario)
    if session_id is not None:
        state = replace(state, id=session_id)
    for input_symbol, output_symbol in history:
        state = observe(state, input_symbol, output_symbol)
    return state


def residual_scenario(state: SessionState) -> Scenario:
    """The scenario still in play: surviving candidates over unapplied inputs.

    Applied inputs are dropped because re-applying one can never force
    anything in the worst case (the box may just repeat its old answer).
    """
    inputs = state.unused_inputs
    functions = tuple(
        BehaviorFunction(f.name, {i: f.table[i] for i in inputs})
        for f in state.scenario.functions
        if f.name in state.consistent
    )
    return Scenario(
        inputs=inputs,
        outputs=state.scenario.outputs,
        functions=functions,
        correct=state.consistent & state.scenario.correct,
    )


def feasibility(state: SessionState) -> int | None:
    """Minimum worst-case number of further tests, or None if no sequence of
    fresh inputs can still force a verdict."""
    if state.status.terminal:
        raise TerminatedSessionError(f"session is {state.status.value}, not running")
    residual = residual_scenario(state)
    for k in range(len(residual.inputs) + 1):
        if _Search(residual, SolveConfig()).solve(residual.all_names, frozenset(), k):
            return k
    return None


def _exact_scores(state: SessionState) -> tuple[list[advisor.RankedInput], int]:
    """Worst-case optimal test count for starting with each unused input.

    The score of input i is the least depth at which a strategy forced to
    open with i decides the residual scenario (so a score of 1 means "i
    finishes testing by itself"); infinity marks first moves that can no
    longer lead to a verdict at all.
    """
    residual = residual_scenario(state)
    spent = 0  # node count carried across every search of this request
    entries: list[advisor.RankedInput] = []
    for i in residual.inputs:
        cfg = SolveConfig(forced_prefix=(i,), node_budget=EXACT_NODE_GUARD)
        best: float = math.inf
        for k in range(len(residual.inputs) + 1):
            search = _Search(residual, cfg)
            search.nodes = spent
            decided = search.solve(residual.all_names, frozenset(), k)
            spent = search.nodes
            if decided:
                best = float(k)
                break
        entries.append(advisor.RankedInput(i, best, True))
    return entries, spent


def recommend(
    state: SessionState,
    mode: str = advisor.MODE_EXACT,
    depth: int = FALLBACK_DEPTH,
    budget: int | None = None,
) -> advisor.Advice:
    """Rank the next input to apply.

    Exact mode solves the residual scenario once per candidate first move;
    if that search outgrows :data:`EXACT_NODE_GUARD` it falls back to the
    heuristic advisor and says so via ``fallback``.  Heuristic mode delegates
    to the advisor at the given depth/budget directly.
    """
    if state.status.terminal:
        raise TerminatedSessionError(f"session is {state.status.value}, not running")
    unused = state.unused_inputs
    if not unused:
        raise ValueError("no unused inputs remain")
    if mode == advisor.MODE_EXACT:
        try:
            entries, nodes = _exact_scores(state)
        except NodeBudgetExceeded:
            advice = advisor.advise(
                state.scenario,
                state.consistent,
                state.used_inputs,
                depth=min(FALLBACK_DEPTH, len(unused)),
                budget=budget,
            )
            return replace(advice, fallback=True)
        entries.sort(key=lambda r: (r.score, state.scenario.input_index[r.input]))
        return advisor.Advice(
            ranked=tuple(entries),
            depth_used=len(unused),
            nodes_expanded=nodes,
            mode=advisor.MODE_EXACT,
        )
    if mode == advisor.MODE_HEURISTIC:
        return advisor.advise(
            state.scenario, state.consistent, state.used_inputs, depth=depth, budget=budget
        )
    raise ValueError(f"unknown recommendation mode {mode!r}")
