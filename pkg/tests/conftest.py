import random

import pytest

from adaptest import QbfFormula, Scenario, builtin_cas, random_scenario
from adaptest.model import BehaviorFunction
from adaptest.oracle import literal as L


@pytest.fixture(scope="session")
def cas() -> Scenario:
    return builtin_cas()


@pytest.fixture(scope="session")
def paper_pair() -> tuple[QbfFormula, QbfFormula]:
    """The order-sensitivity pair: the same matrix is true in the original
    quantifier order and false after swapping the variable pairs."""
    original = QbfFormula.make(
        2, [[L("x", 2), L("y", 1, False)], [L("x", 2, False), L("y", 1)]]
    )
    swapped = QbfFormula.make(
        2, [[L("x", 1), L("y", 2, False)], [L("x", 1, False), L("y", 2)]]
    )
    return original, swapped


def small_scenario(seed: int) -> Scenario:
    """Seeded corpus member: <=3 inputs, <=3 outputs, <=6 functions, mixed determinism."""
    rng = random.Random(seed * 2654435761 % (2**32))
    n_functions = rng.randint(1, 6)
    return random_scenario(
        seed=seed,
        n_inputs=rng.randint(1, 3),
        n_outputs=rng.randint(1, 3),
        n_functions=n_functions,
        n_correct=rng.randint(0, n_functions),
        nondet_density=rng.choice([0.0, 0.0, 0.25, 0.5]),
    )


def tiny_deterministic(seed: int, n_inputs: int = 4, n_functions: int = 7) -> Scenario:
    rng = random.Random(seed)
    count = rng.randint(1, n_functions)
    return random_scenario(
        seed=seed + 10_000,
        n_inputs=rng.randint(1, n_inputs),
        n_outputs=rng.randint(1, 3),
        n_functions=count,
        n_correct=rng.randint(0, count),
        nondet_density=0.0,
    )


def scenario_of(rows: dict[str, dict[str, list[str]]], inputs, outputs, correct) -> Scenario:
    functions = [BehaviorFunction.make(name, table) for name, table in rows.items()]
    return Scenario.make(inputs, outputs, functions, correct)
