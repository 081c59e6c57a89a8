"""Brute-force reference implementations used to certify the solver and reductions.

These share no search code with the solver: the minimum-depth oracle computes
depths numerically over function-index bitmasks, while the solver answers
budgeted yes/no questions over name sets.  Agreement between the two is the
primary correctness evidence, so keeping the shapes different is deliberate.

Everything here is desk-scale only and guarded accordingly.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

from .model import Scenario, require_valid

# A literal is (kind, index, positive): kind "x" for existential variables,
# "y" for universal ones, indices starting at 1.
Literal = tuple[str, int, bool]
Clause = frozenset[Literal]

_INFINITE = 1 << 30


class OracleSizeError(Exception):
    """Instance is beyond the brute-force size guard."""


def literal(kind: str, index: int, positive: bool = True) -> Literal:
    if kind not in ("x", "y"):
        raise ValueError(f"literal kind must be 'x' or 'y', got {kind!r}")
    if index < 1:
        raise ValueError("literal index starts at 1")
    return (kind, index, positive)


@dataclass(frozen=True)
class QbfFormula:
    """A quantified boolean formula of the fixed shape ExAy ExAy ... (matrix in CNF).

    ``k`` counts the exists/forall pairs; clause literals range over x1..xk
    and y1..yk.  Clauses are sets, so duplicate literals collapse; a clause
    may contain a variable and its negation (it is then trivially satisfied).
    """

    k: int
    clauses: tuple[Clause, ...]

    @staticmethod
    def make(k: int, clauses: Iterable[Iterable[Literal]]) -> "QbfFormula":
        q = QbfFormula(k, tuple(frozenset(c) for c in clauses))
        problems = q.validate()
        if problems:
            raise ValueError("invalid formula: " + "; ".join(problems))
        return q

    def validate(self) -> list[str]:
        problems: list[str] = []
        if self.k < 1:
            problems.append("k must be at least 1")
        for n, clause in enumerate(self.clauses, start=1):
            if not clause:
                problems.append(f"clause {n} is empty")
            for kind, index, positive in clause:
                if kind not in ("x", "y"):
                    problems.append(f"clause {n} literal kind {kind!r} unknown")
                elif not 1 <= index <= self.k:
                    problems.append(f"clause {n} references variable index {index} outside 1..{self.k}")
                if not isinstance(positive, bool):
                    problems.append(f"clause {n} literal polarity must be boolean")
        return problems


def qbf_eval(formula: QbfFormula) -> bool:
    """Exhaustive alternation: exists a value of x_j such that for all y_j ... all clauses hold.

    Exponential in ``k`` (4^k assignments), fine for the small instances this
    module is meant for.
    """
    problems = formula.validate()
    if problems:
        raise ValueError("invalid formula: " + "; ".join(problems))

    assignment: dict[tuple[str, int], bool] = {}

    def satisfied(clause: Clause) -> bool:
        return any(assignment[(kind, index)] == positive for kind, index, positive in clause)

    def play(j: int) -> bool:
        if j > formula.k:
            return all(satisfied(c) for c in formula.clauses)
        for vx in (False, True):
            assignment[("x", j)] = vx
            if all(_forall_y(j, vy, play) for vy in (False, True)):
                return True
        return False

    def _forall_y(j: int, vy: bool, cont) -> bool:
        assignment[("y", j)] = vy
        return cont(j + 1)

    return play(1)


def min_depth(scenario: Scenario, *, max_inputs: int = 6, max_functions: int = 16) -> int | None:
    """Reference minimum strategy depth, or None when no strategy exists.

    Computed as: depth(S) is 0 when S is uniform, otherwise 1 plus the best
    over fresh inputs of the worst over producible outputs of the filtered
    set's depth.  Memoized on (function bitmask, used-input bitmask).
    """
    require_valid(scenario)
    if len(scenario.inputs) > max_inputs or len(scenario.functions) > max_functions:
        raise OracleSizeError(
            f"instance with {len(scenario.inputs)} inputs / {len(scenario.functions)} "
            f"functions exceeds the brute-force guard ({max_inputs}/{max_functions})"
        )

    n_inputs = len(scenario.inputs)
    n_outputs = len(scenario.outputs)
    correct_mask = 0
    for idx, f in enumerate(scenario.functions):
        if f.name in scenario.correct:
            correct_mask |= 1 << idx
    full_mask = (1 << len(scenario.functions)) - 1
    incorrect_mask = full_mask ^ correct_mask

    # producers[i][o] = bitmask of functions that may reply output o to input i
    producers = [[0] * n_outputs for _ in range(n_inputs)]
    for idx, f in enumerate(scenario.functions):
        for i_idx, i in enumerate(scenario.inputs):
            for o in f.table[i]:
                producers[i_idx][scenario.output_index[o]] |= 1 << idx

    memo: dict[tuple[int, int], int] = {}

    def depth_of(mask: int, used: int) -> int:
        if mask & correct_mask == mask or mask & incorrect_mask == mask:
            return 0
        key = (mask, used)
        if key in memo:
            return memo[key]
        best = _INFINITE
        for i_idx in range(n_inputs):
            if used >> i_idx & 1:
                continue
            worst = 0
            for o_idx in range(n_outputs):
                child = mask & producers[i_idx][o_idx]
                if child == 0:
                    continue
                worst = max(worst, depth_of(child, used | (1 << i_idx)))
                if worst + 1 >= best:
                    break
            best = min(best, worst + 1)
        memo[key] = best
        return best

    result = depth_of(full_mask, 0)
    return None if result >= _INFINITE else result


@dataclass(frozen=True)
class SetCoverInstance:
    """Named subsets over a ground set; the classic covering problem."""

    elements: tuple[str, ...]
    sets: tuple[tuple[str, frozenset[str]], ...]

    @staticmethod
    def make(elements: Iterable[str], sets: Mapping[str, Iterable[str]]) -> "SetCoverInstance":
        return SetCoverInstance(
            tuple(elements), tuple((name, frozenset(members)) for name, members in sets.items())
        )

    def validate(self) -> list[str]:
        problems: list[str] = []
        if len(set(self.elements)) != len(self.elements):
            problems.append("duplicate element names")
        names = [name for name, _ in self.sets]
        if len(set(names)) != len(names):
            problems.append("duplicate set names")
        universe = set(self.elements)
        covered: set[str] = set()
        for name, members in self.sets:
            stray = members - universe
            if stray:
                problems.append(f"set {name!r} contains unknown elements {sorted(stray)}")
            covered |= members
        missing = universe - covered
        if missing:
            problems.append(f"elements {sorted(missing)} are not covered by any set")
        return problems


def min_set_cover(instance: SetCoverInstance, *, max_sets: int = 12) -> int:
    """Size of the smallest cover, by enumerating set combinations by size."""
    problems = instance.validate()
    if problems:
        raise ValueError("invalid set-cover instance: " + "; ".join(problems))
    if len(instance.sets) > max_sets:
        raise OracleSizeError(
            f"{len(instance.sets)} sets exceeds the brute-force guard ({max_sets})"
        )
    universe = set(instance.elements)
    members = [m for _, m in instance.sets]
    for size in range(len(members) + 1):
        for combo in combinations(members, size):
            chosen: set[str] = set()
            for m in combo:
                chosen |= m
            if chosen >= universe:
                return size
    raise AssertionError("unreachable: validated instances always have a full cover")
