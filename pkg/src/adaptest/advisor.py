"""Depth-limited minimax recommendations for instances too large to solve exactly.

The tester minimizes, the black box maximizes.  Leaves below the depth cutoff
are valued by how balanced the surviving set still is: the smaller side of
the correct/incorrect split divided by the set size.  Zero means a verdict is
already forced; 0.5 is maximal confusion.  Normalizing by the set size keeps
values comparable across branches that retain different numbers of survivors.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Scenario, forces_verdict

MODE_EXACT = "exact"
MODE_HEURISTIC = "heuristic"


@dataclass(frozen=True)
class RankedInput:
    input: str
    score: float
    exact: bool


@dataclass(frozen=True)
class Advice:
    """Ranked next-input recommendations, best (lowest score) first.

    ``exact`` on an entry means its whole subtree bottomed out in verdicts
    before the cutoff, so the score is a guarantee, not an estimate.
    ``truncated`` flags results degraded by the node budget.  ``fallback``
    marks heuristic advice returned because an exact request was refused.
    """

    ranked: tuple[RankedInput, ...]
    depth_used: int
    nodes_expanded: int
    mode: str = MODE_HEURISTIC
    truncated: bool = False
    fallback: bool = False


def heuristic_value(scenario: Scenario, names: frozenset[str] | set[str]) -> float:
    """Balance of the surviving set: min(correct, incorrect) / total, in [0, 0.5]."""
    if not names:
        raise ValueError("heuristic_value needs a non-empty candidate set")
    names = frozenset(names)
    n_correct = len(names & scenario.correct)
    return min(n_correct, len(names) - n_correct) / len(names)


def advise(
    scenario: Scenario,
    names: frozenset[str] | set[str],
    used_inputs: frozenset[str] | set[str],
    depth: int,
    budget: int | None = None,
) -> Advice:
    """Rank every unused input by its worst-case value at the given search depth.

    Runs minimax below each candidate first move: output branches take the
    maximum (the box picks the nastiest reply), deeper input choices take the
    minimum.  ``budget`` caps expanded nodes; once it runs out, un-expanded
    nodes are valued heuristically and the advice is marked truncated.
    """
    names = frozenset(names)
    used = frozenset(used_inputs)
    if not names:
        raise ValueError("advise needs a non-empty candidate set")
    if depth < 1:
        raise ValueError("depth must be at least 1")
    unused = [i for i in scenario.inputs if i not in used]
    if not unused:
        raise ValueError("no unused inputs remain")

    state = {"expanded": 1, "truncated": False}  # 1 accounts for the root

    def branch(cs: frozenset[str], used_now: frozenset[str], i: str, depth_left: int) -> tuple[float, bool]:
        worst = 0.0
        all_exact = True
        by_name = scenario.by_name
        for o in scenario.producible_outputs(cs, i):
            child = frozenset(n for n in cs if o in by_name[n].table[i])
            score, exact = value(child, used_now | {i}, depth_left - 1)
            worst = max(worst, score)
            all_exact = all_exact and exact
        return worst, all_exact

    def value(cs: frozenset[str], used_now: frozenset[str], depth_left: int) -> tuple[float, bool]:
        if forces_verdict(scenario, cs):
            return 0.0, True
        if depth_left == 0:
            return heuristic_value(scenario, cs), False
        moves = [i for i in scenario.inputs if i not in used_now]
        if not moves:
            return heuristic_value(scenario, cs), False
        if budget is not None and state["expanded"] >= budget:
            state["truncated"] = True
            return heuristic_value(scenario, cs), False
        state["expanded"] += 1
        best: tuple[float, bool] | None = None
        for i in moves:
            candidate = branch(cs, used_now, i, depth_left)
            if best is None or candidate[0] < best[0]:
                best = candidate
        assert best is not None
        return best

    ranked = []
    for i in unused:
        score, exact = branch(names, used, i, depth)
        ranked.append(RankedInput(i, score, exact))
    ranked.sort(key=lambda r: (r.score, scenario.input_index[r.input]))
    return Advice(
        ranked=tuple(ranked),
        depth_used=min(depth, len(unused)),
        nodes_expanded=state["expanded"],
        mode=MODE_HEURISTIC,
        truncated=state["truncated"],
    )
