"""Exact decision/optimization of adaptive testing strategies.

``decide`` answers: can some adaptive strategy of depth <= k always force a
correct/incorrect verdict, whatever outputs the black box produces?  The
search backtracks over inputs (tester moves, existentially) and outputs
(black-box moves, universally), exploring both in alphabet order so results
and extracted trees are canonical.

Depth is clamped to the number of inputs: repeating an input on a branch is
useless because the box may simply repeat its previous answer, so no branch
ever needs more distinct inputs than the alphabet provides.  Memory stays
polynomial in the scenario size when memoization is disabled; the memo is a
pure speedup and never changes answers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .model import (
    HypothesisViolationError,
    Scenario,
    Verdict,
    forces_verdict,
    require_valid,
    verdict_of,
)

MODE_EARLY_STOP = "early-stop"
MODE_LITERAL_B1 = "literal-b1"
_MODES = (MODE_EARLY_STOP, MODE_LITERAL_B1)


class NoStrategyError(Exception):
    """Strategy extraction was asked for a (scenario, k) that is not decidable."""


class NodeBudgetExceeded(Exception):
    """The configured node budget ran out before the search finished."""


@dataclass(frozen=True)
class SolveConfig:
    """Knobs for one solve.

    ``mode`` selects when verdicts are checked: ``early-stop`` prunes a branch
    as soon as its consistent set is uniform, ``literal-b1`` expands every
    branch to the clamped depth and checks only there.  Both return identical
    booleans; literal mode exists to exercise the uninstrumented search shape.

    ``forced_prefix`` pins the first moves (every output branch of each forced
    input is still covered), which is how "what if we start with X" questions
    are answered.  ``node_budget`` aborts oversized searches with
    :class:`NodeBudgetExceeded`; exact callers leave it unset.  ``memoize``
    can be switched off to run in truly polynomial space; ``memo_cap`` bounds
    the cache size when it is on.
    """

    mode: str = MODE_EARLY_STOP
    forced_prefix: tuple[str, ...] | None = None
    node_budget: int | None = None
    memoize: bool = True
    memo_cap: int = 200_000

    def __post_init__(self) -> None:
        if self.mode not in _MODES:
            raise ValueError(f"unknown solve mode {self.mode!r}; expected one of {_MODES}")


@dataclass(frozen=True)
class Leaf:
    verdict: Verdict
    consistent: frozenset[str]

    @property
    def depth(self) -> int:
        return 0


@dataclass(frozen=True)
class Branch:
    input: str
    children: dict[str, "StrategyTree"] = field(compare=True)

    @property
    def depth(self) -> int:
        return 1 + max(child.depth for child in self.children.values())


# An adaptive plan: internal nodes apply an input, edges are labeled with the
# outputs the surviving candidates can produce, leaves carry the verdict.
StrategyTree = Union[Leaf, Branch]


class _Search:
    """One backtracking search over a fixed scenario and depth budget."""

    def __init__(self, scenario: Scenario, cfg: SolveConfig):
        self.scenario = scenario
        self.cfg = cfg
        self.nodes = 0
        self.memo: dict[tuple[frozenset[str], frozenset[str]], bool] | None = (
            {} if cfg.memoize else None
        )
        self.forced: tuple[str, ...] = tuple(cfg.forced_prefix or ())
        if len(self.forced) > len(set(self.forced)):
            raise ValueError("forced_prefix contains repeated inputs")
        if len(self.forced) > len(scenario.inputs):
            raise ValueError("forced_prefix is longer than the input alphabet")
        for symbol in self.forced:
            if symbol not in scenario.input_index:
                raise ValueError(f"forced_prefix names unknown input {symbol!r}")

    def _tick(self) -> None:
        self.nodes += 1
        budget = self.cfg.node_budget
        if budget is not None and self.nodes > budget:
            raise NodeBudgetExceeded(f"search exceeded {budget} nodes")

    def _candidates(self, used: frozenset[str]) -> list[str]:
        if len(used) < len(self.forced):
            return [self.forced[len(used)]]
        return [i for i in self.scenario.inputs if i not in used]

    def _child(self, names: frozenset[str], i: str, o: str) -> frozenset[str]:
        by_name = self.scenario.by_name
        return frozenset(n for n in names if o in by_name[n].table[i])

    def solve(self, names: frozenset[str], used: frozenset[str], depth_left: int) -> bool:
        self._tick()
        early = self.cfg.mode == MODE_EARLY_STOP
        if early and forces_verdict(self.scenario, names):
            return True
        if depth_left == 0:
            return forces_verdict(self.scenario, names)
        key = (names, used)
        if self.memo is not None and key in self.memo:
            return self.memo[key]
        result = False
        for i in self._candidates(used):
            used_next = used | {i}
            for o in self.scenario.producible_outputs(names, i):
                if not self.solve(self._child(names, i, o), used_next, depth_left - 1):
                    break
            else:
                result = True
                break
        if self.memo is not None and len(self.memo) < self.cfg.memo_cap:
            self.memo[key] = result
        return result

    def extract(self, names: frozenset[str], used: frozenset[str], depth_left: int) -> StrategyTree:
        """Materialize the canonical winning tree below this node.

        Leaves are placed as soon as a verdict is forced, whatever the solve
        mode, so the result is the minimal canonical plan.
        """
        if forces_verdict(self.scenario, names):
            return Leaf(verdict_of(self.scenario, names), names)
        if depth_left == 0:
            raise NoStrategyError("no strategy within the depth budget")
        for i in self._candidates(used):
            used_next = used | {i}
            outs = self.scenario.producible_outputs(names, i)
            children_sets = {o: self._child(names, i, o) for o in outs}
            if all(self.solve(cs, used_next, depth_left - 1) for cs in children_sets.values()):
                return Branch(
                    i,
                    {o: self.extract(cs, used_next, depth_left - 1) for o, cs in children_sets.items()},
                )
        raise NoStrategyError("no strategy within the depth budget")


def _clamp(scenario: Scenario, k: int) -> int:
    return min(k, len(scenario.inputs))


def decide(scenario: Scenario, k: int, cfg: SolveConfig = SolveConfig()) -> bool:
    """True iff some adaptive strategy of depth <= min(k, |inputs|) always forces a verdict.

    ``k`` may be arbitrarily large; it is clamped immediately, so memory and
    time are bounded by the alphabet, never by ``k``.  With ``k = 0`` this
    simply asks whether the full collection is already uniform.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    require_valid(scenario)
    search = _Search(scenario, cfg)
    return search.solve(scenario.all_names, frozenset(), _clamp(scenario, k))


def optimize(scenario: Scenario, cfg: SolveConfig = SolveConfig()) -> int | None:
    """Least depth at which :func:`decide` succeeds, or None when no depth works.

    Tries k = 0, 1, ... up to the input count (iterative deepening); beyond
    that no further depth can help, so absence at the cap means infeasible.
    """
    require_valid(scenario)
    for k in range(len(scenario.inputs) + 1):
        search = _Search(scenario, cfg)
        if search.solve(scenario.all_names, frozenset(), k):
            return k
    return None


def extract_strategy(scenario: Scenario, k: int, cfg: SolveConfig = SolveConfig()) -> StrategyTree:
    """Build the canonical strategy tree witnessing ``decide(scenario, k, cfg)``.

    Children are enumerated in output-alphabet order and the first workable
    input in alphabet order is chosen at every node, so the same call always
    returns the identical tree.  Raises :class:`NoStrategyError` when decide
    is false.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    require_valid(scenario)
    if not scenario.functions:
        raise NoStrategyError("scenario has no candidate functions to classify")
    search = _Search(scenario, cfg)
    depth = _clamp(scenario, k)
    if not search.solve(scenario.all_names, frozenset(), depth):
        raise NoStrategyError(f"no adaptive strategy of depth <= {depth} exists")
    return search.extract(scenario.all_names, frozenset(), depth)


def validate_strategy(scenario: Scenario, tree: StrategyTree, k: int) -> bool:
    """Certificate check: is ``tree`` a valid depth-<=k strategy for ``scenario``?

    Recomputes the consistent set along every path and verifies, at each
    branch, that the edge labels are exactly the outputs the surviving
    candidates can produce; at each leaf, that the stored set matches, is
    non-empty, and is entirely on one side of the correct/incorrect split;
    and that no path repeats an input or exceeds ``k`` applications.
    """

    def walk(node: StrategyTree, names: frozenset[str], used: frozenset[str], depth: int) -> bool:
        if isinstance(node, Leaf):
            if not names or node.consistent != names:
                return False
            try:
                actual = verdict_of(scenario, names)
            except HypothesisViolationError:
                return False
            return actual is not Verdict.UNDECIDED and actual == node.verdict
        if node.input not in scenario.input_index or node.input in used:
            return False
        if depth >= k:
            return False
        expected = scenario.producible_outputs(names, node.input)
        if set(node.children) != set(expected):
            return False
        by_name = scenario.by_name
        for o, child in node.children.items():
            child_names = frozenset(n for n in names if o in by_name[n].table[node.input])
            if not walk(child, child_names, used | {node.input}, depth + 1):
                return False
        return True

    return walk(tree, scenario.all_names, frozenset(), 0)
