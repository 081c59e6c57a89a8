import json

import pytest

from adaptest import (
    extract_strategy,
    mini_atm,
    qbf_eval,
    validate_strategy,
)
from adaptest.formats import (
    FormatError,
    document_to_factored,
    document_to_numeric,
    document_to_scenario,
    document_to_tree,
    dumps_scenario,
    factored_to_document,
    format_cover,
    format_qbf,
    loads_scenario,
    numeric_to_document,
    parse_cover,
    parse_qbf,
    tree_to_document,
    tree_to_dot,
)
from adaptest.generators import NumericFunction, NumericScenario


class TestScenarioDocuments:
    def test_round_trip_is_bit_exact(self, cas):
        text = dumps_scenario(cas, k=2)
        scenario, k = loads_scenario(text)
        assert scenario == cas
        assert k == 2
        assert dumps_scenario(scenario, k=k) == text

    def test_canonical_layout(self, cas):
        text = dumps_scenario(cas)
        assert text.endswith("\n") and "\r" not in text
        doc = json.loads(text)
        assert list(doc) == ["inputs", "outputs", "functions", "correct"]
        assert doc["inputs"] == ["near", "far", "inter"]
        assert doc["functions"][0]["name"] == "f1"
        # table rows follow input declaration order, cells follow output order
        assert list(doc["functions"][0]["table"]) == ["near", "far", "inter"]
        assert doc["functions"][0]["table"]["inter"] == ["turn", "brake"]

    def test_k_is_optional_and_arbitrary_precision(self, cas):
        scenario, k = loads_scenario(dumps_scenario(cas))
        assert k is None
        big = 10**40
        _, parsed = loads_scenario(dumps_scenario(cas, k=big))
        assert parsed == big

    def test_parse_errors_name_the_field(self):
        with pytest.raises(FormatError, match="'inputs'"):
            document_to_scenario({"outputs": [], "functions": [], "correct": []})
        with pytest.raises(FormatError, match=r"functions\[0\]\.name"):
            document_to_scenario(
                {"inputs": ["a"], "outputs": ["0"], "functions": [{"table": {}}], "correct": []}
            )
        with pytest.raises(FormatError, match="'k'"):
            document_to_scenario(
                {"inputs": ["a"], "outputs": ["0"],
                 "functions": [{"name": "f", "table": {"a": ["0"]}}],
                 "correct": [], "k": -1}
            )
        with pytest.raises(FormatError, match="invalid scenario"):
            document_to_scenario(
                {"inputs": ["a"], "outputs": ["0"],
                 "functions": [{"name": "f", "table": {"a": ["0"]}}],
                 "correct": ["ghost"]}
            )
        with pytest.raises(FormatError, match="JSON"):
            loads_scenario("{not json")


class TestQbfText:
    def test_parse_and_format_round_trip(self):
        text = "k 2\nx2 -y1\n-x2 y1\n"
        q = parse_qbf(text)
        assert q.k == 2
        assert q.clauses[0] == frozenset([("x", 2, True), ("y", 1, False)])
        # formatting canonicalizes literal order but preserves the formula
        canonical = format_qbf(q)
        assert parse_qbf(canonical) == q
        assert format_qbf(parse_qbf(canonical)) == canonical

    def test_eval_of_parsed_formula(self):
        assert qbf_eval(parse_qbf("k 2\nx2 -y1\n-x2 y1\n"))

    def test_bad_literals_are_reported_with_line_numbers(self):
        with pytest.raises(FormatError, match="line 2"):
            parse_qbf("k 1\nz3\n")
        with pytest.raises(FormatError, match="first line"):
            parse_qbf("x1 y1\n")
        with pytest.raises(FormatError, match="outside"):
            parse_qbf("k 1\nx2\n")


class TestCoverText:
    def test_parse_and_format_round_trip(self):
        text = "elements e1 e2 e3\nS1: e1 e2\nS2: e3\n"
        sc = parse_cover(text)
        assert sc.elements == ("e1", "e2", "e3")
        assert dict(sc.sets) == {"S1": {"e1", "e2"}, "S2": {"e3"}}
        assert format_cover(sc) == text

    def test_bad_lines_are_reported(self):
        with pytest.raises(FormatError, match="first line"):
            parse_cover("S1: e1\n")
        with pytest.raises(FormatError, match="line 2"):
            parse_cover("elements e1\nS1 e1\n")
        with pytest.raises(FormatError, match="not covered"):
            parse_cover("elements e1 e2\nS1: e1\n")
        with pytest.raises(FormatError, match="unknown elements"):
            parse_cover("elements e1\nS1: e9\n")


class TestTreeDocuments:
    def test_round_trip_preserves_validity(self, cas):
        tree = extract_strategy(cas, 2)
        doc = tree_to_document(tree)
        again = document_to_tree(doc)
        assert validate_strategy(cas, again, 2)
        assert tree_to_document(again) == doc

    def test_dot_labels_leaves_with_verdicts(self, cas):
        dot = tree_to_dot(extract_strategy(cas, 2))
        assert dot.startswith("digraph strategy {")
        assert 'INCORRECT {f4}' in dot
        assert 'CORRECT {f1, f2}' in dot
        assert 'label="inter"' in dot

    def test_bad_tree_documents_are_rejected(self):
        with pytest.raises(FormatError, match="verdict"):
            document_to_tree({"type": "leaf", "verdict": "undecided", "consistent": []})
        with pytest.raises(FormatError, match="children"):
            document_to_tree({"type": "branch", "input": "a", "children": {}})


class TestNumericDocuments:
    def test_round_trip(self):
        ns = NumericScenario(
            inputs=("a",),
            functions=(NumericFunction("f", {"a": (1.4,)}), NumericFunction("g", {"a": (1.5,)})),
            correct=frozenset(["f"]),
            margin=0.2,
        )
        doc = numeric_to_document(ns)
        again = document_to_numeric(doc)
        assert again == ns

    def test_margin_is_required(self):
        with pytest.raises(FormatError, match="margin"):
            document_to_numeric({"inputs": ["a"], "functions": [], "correct": []})


class TestFactoredDocuments:
    def test_round_trip_preserves_behavior(self):
        spec = mini_atm()
        doc = factored_to_document(spec)
        again = document_to_factored(doc)
        assert again == spec

    def test_counting_without_behavior(self):
        doc = {
            "axes": [{"name": "a", "options": ["x", "y"]}],
            "faults": [],
            "max_faults": 0,
        }
        spec = document_to_factored(doc)
        assert spec.behavior is None

    def test_choices_must_cover_every_axis(self):
        doc = {
            "axes": [{"name": "a", "options": ["x"]}, {"name": "b", "options": ["y"]}],
            "faults": [],
            "max_faults": 0,
            "inputs": ["i"],
            "outputs": ["0"],
            "behavior": [{"choices": {"a": "x"}, "table": {"i": ["0"]}}],
        }
        with pytest.raises(FormatError, match="one option per axis"):
            document_to_factored(doc)
