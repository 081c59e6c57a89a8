import itertools
import random

import pytest

from adaptest import (
    OracleSizeError,
    QbfFormula,
    SetCoverInstance,
    cas_variant,
    min_depth,
    min_set_cover,
    optimize,
    qbf_eval,
)
from adaptest.oracle import literal as L

from conftest import scenario_of, small_scenario


class TestMinDepth:
    def test_cas_needs_two_tests(self, cas):
        assert min_depth(cas) == 2

    def test_all_correct_needs_zero(self):
        s = scenario_of({"f": {"a": ["0"]}}, inputs=["a"], outputs=["0"], correct=["f"])
        assert min_depth(s) == 0

    def test_hiding_variant_is_infeasible(self):
        assert min_depth(cas_variant("f7-brake-nondet")) is None

    def test_size_guard(self, cas):
        with pytest.raises(OracleSizeError):
            min_depth(cas, max_functions=4)

    def test_agrees_with_the_solver_on_a_seeded_corpus(self):
        for seed in range(150):
            s = small_scenario(seed)
            assert min_depth(s) == optimize(s), f"disagreement at seed {seed}"


class TestQbfEval:
    def test_paper_formula_in_cnf_is_true(self, paper_pair):
        original, swapped = paper_pair
        assert qbf_eval(original)
        assert not qbf_eval(swapped)

    def test_cnf_conversion_matches_the_source_matrix(self):
        # source matrix: (x2 and y1) or (not x2 and not y1); CNF used above:
        # (x2 or not y1) and (not x2 or y1).  Truth-table equality over all
        # four assignments certifies the conversion.
        for x2, y1 in itertools.product([False, True], repeat=2):
            dnf = (x2 and y1) or (not x2 and not y1)
            cnf = (x2 or not y1) and (not x2 or y1)
            assert dnf == cnf

    def test_forall_clause_alone_is_false(self):
        assert not qbf_eval(QbfFormula.make(1, [[L("y", 1)]]))

    def test_exists_clause_alone_is_true(self):
        assert qbf_eval(QbfFormula.make(1, [[L("x", 1)]]))

    def test_invariant_under_clause_and_literal_reordering(self):
        rng = random.Random(7)
        lits = [(k, j, p) for k in "xy" for j in (1, 2) for p in (False, True)]
        for _ in range(50):
            clauses = [
                frozenset(rng.sample(lits, rng.randint(1, 3)))
                for _ in range(rng.randint(1, 3))
            ]
            q1 = QbfFormula(2, tuple(clauses))
            q2 = QbfFormula(2, tuple(reversed(clauses)))
            assert qbf_eval(q1) == qbf_eval(q2)

    def test_rejects_malformed_formulas(self):
        with pytest.raises(ValueError, match="k must be"):
            QbfFormula.make(0, [[L("x", 1)]])
        with pytest.raises(ValueError, match="outside"):
            QbfFormula.make(1, [[L("x", 2)]])
        with pytest.raises(ValueError, match="empty"):
            QbfFormula.make(1, [[]])


class TestMinSetCover:
    def test_one_set_covering_everything(self):
        sc = SetCoverInstance.make(["e1", "e2"], {"a": ["e1"], "b": ["e2"], "c": ["e1", "e2"]})
        assert min_set_cover(sc) == 1

    def test_two_disjoint_sets(self):
        sc = SetCoverInstance.make(["e1", "e2"], {"a": ["e1"], "b": ["e2"]})
        assert min_set_cover(sc) == 2

    def test_uncoverable_element_is_a_validation_error(self):
        sc = SetCoverInstance.make(["e1", "e2"], {"a": ["e1"]})
        with pytest.raises(ValueError, match="not covered"):
            min_set_cover(sc)

    def test_size_guard(self):
        sc = SetCoverInstance.make(["e"], {f"s{n}": ["e"] for n in range(13)})
        with pytest.raises(OracleSizeError):
            min_set_cover(sc)

    def test_never_worse_than_greedy(self):
        rng = random.Random(3)
        for _ in range(30):
            n_elements = rng.randint(1, 8)
            elements = [f"e{n}" for n in range(n_elements)]
            sets = {}
            for n in range(rng.randint(1, 6)):
                sets[f"s{n}"] = rng.sample(elements, rng.randint(1, n_elements))
            covered = set().union(*sets.values())
            sets["fill"] = [e for e in elements if e not in covered] or [elements[0]]
            sc = SetCoverInstance.make(elements, sets)
            exact = min_set_cover(sc)
            greedy = _plain_greedy(sc)
            assert exact <= greedy


def _plain_greedy(sc: SetCoverInstance) -> int:
    remaining = set(sc.elements)
    count = 0
    available = list(sc.sets)
    while remaining:
        name, members = max(available, key=lambda item: len(item[1] & remaining))
        remaining -= members
        available.remove((name, members))
        count += 1
    return count
