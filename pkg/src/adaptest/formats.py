"""File formats: scenario JSON documents, QBF and set-cover text, tree exports.

The scenario document is the interchange format every command emits and
consumes.  Canonical form is deterministic (declaration order everywhere,
two-space indentation, UTF-8, LF, trailing newline) so emitted documents
round-trip bit-exactly.
"""

from __future__ import annotations

import json
import re
from typing import Any

from .generators import FactoredSpec, NumericFunction, NumericScenario
from .model import BehaviorFunction, Scenario, Verdict, validate_scenario
from .oracle import Literal, QbfFormula, SetCoverInstance
from .solver import Branch, Leaf, StrategyTree


class FormatError(Exception):
    """Malformed document; the message names the offending field or line."""


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise FormatError(message)


def _string_array(doc: Any, key: str) -> list[str]:
    value = doc.get(key)
    _expect(isinstance(value, list), f"field '{key}' must be an array")
    for n, item in enumerate(value):
        _expect(isinstance(item, str), f"field '{key}[{n}]' must be a string")
    return value


# -- scenario documents ------------------------------------------------------


def scenario_to_document(scenario: Scenario, k: int | None = None) -> dict:
    doc: dict[str, Any] = {
        "inputs": list(scenario.inputs),
        "outputs": list(scenario.outputs),
        "functions": [
            {
                "name": f.name,
                "table": {i: scenario.sort_outputs(f.table[i]) for i in scenario.inputs},
            }
            for f in scenario.functions
        ],
        "correct": [name for name in scenario.function_names if name in scenario.correct],
    }
    if k is not None:
        doc["k"] = k
    return doc


def document_to_scenario(doc: Any) -> tuple[Scenario, int | None]:
    """Parse and validate a scenario document; returns the scenario and its
    optional depth bound ``k``."""
    _expect(isinstance(doc, dict), "document must be a JSON object")
    inputs = _string_array(doc, "inputs")
    outputs = _string_array(doc, "outputs")
    raw_functions = doc.get("functions")
    _expect(isinstance(raw_functions, list), "field 'functions' must be an array")
    functions = []
    for n, raw in enumerate(raw_functions):
        where = f"functions[{n}]"
        _expect(isinstance(raw, dict), f"field '{where}' must be an object")
        name = raw.get("name")
        _expect(isinstance(name, str) and bool(name), f"field '{where}.name' must be a non-empty string")
        table = raw.get("table")
        _expect(isinstance(table, dict), f"field '{where}.table' must be an object")
        parsed_table = {}
        for i, cell in table.items():
            _expect(isinstance(cell, list) and cell, f"field '{where}.table.{i}' must be a non-empty array")
            for item in cell:
                _expect(isinstance(item, str), f"field '{where}.table.{i}' must contain strings")
            parsed_table[i] = cell
        functions.append(BehaviorFunction.make(name, parsed_table))
    correct = _string_array(doc, "correct")
    k = doc.get("k")
    if k is not None:
        _expect(isinstance(k, int) and not isinstance(k, bool) and k >= 0,
                "field 'k' must be a non-negative integer")
    scenario = Scenario.make(inputs, outputs, functions, correct)
    violations = validate_scenario(scenario)
    _expect(not violations, "invalid scenario: " + "; ".join(violations))
    return scenario, k


def dumps_scenario(scenario: Scenario, k: int | None = None) -> str:
    """Canonical serialization: declaration order, 2-space indent, LF, trailing newline."""
    return json.dumps(scenario_to_document(scenario, k), indent=2, ensure_ascii=False) + "\n"


def loads_scenario(text: str) -> tuple[Scenario, int | None]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from exc
    return document_to_scenario(doc)


# -- QBF text -----------------------------------------------------------------

_LITERAL_RE = re.compile(r"^(-?)([xy])([1-9][0-9]*)$")


def parse_qbf(text: str) -> QbfFormula:
    """First line ``k <count>``, then one clause per line of literals like
    ``x2 -y1`` (x: existential, y: universal, ``-`` negates)."""
    lines = [line.strip() for line in text.splitlines()]
    lines = [line for line in lines if line and not line.startswith("#")]
    _expect(bool(lines), "empty formula file")
    head = lines[0].split()
    _expect(len(head) == 2 and head[0] == "k", "first line must be 'k <count>'")
    try:
        k = int(head[1])
    except ValueError:
        raise FormatError("first line must be 'k <count>' with an integer count") from None
    clauses: list[list[Literal]] = []
    for n, line in enumerate(lines[1:], start=2):
        clause: list[Literal] = []
        for token in line.split():
            match = _LITERAL_RE.match(token)
            _expect(match is not None, f"line {n}: bad literal {token!r} (expected e.g. x2, -y1)")
            sign, kind, index = match.groups()  # type: ignore[union-attr]
            clause.append((kind, int(index), sign != "-"))
        clauses.append(clause)
    try:
        return QbfFormula.make(k, clauses)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def format_qbf(formula: QbfFormula) -> str:
    def fmt(lit: Literal) -> str:
        kind, index, positive = lit
        return f"{'' if positive else '-'}{kind}{index}"

    lines = [f"k {formula.k}"]
    for clause in formula.clauses:
        ordered = sorted(clause, key=lambda lit: (lit[1], lit[0], not lit[2]))
        lines.append(" ".join(fmt(lit) for lit in ordered))
    return "\n".join(lines) + "\n"


# -- set-cover text -----------------------------------------------------------


def parse_cover(text: str) -> SetCoverInstance:
    """First line ``elements e1 e2 ...``, then one line per set: ``Name: e1 e2``."""
    lines = [line.strip() for line in text.splitlines()]
    lines = [line for line in lines if line and not line.startswith("#")]
    _expect(bool(lines), "empty cover file")
    head = lines[0].split()
    _expect(head and head[0] == "elements", "first line must be 'elements <name> ...'")
    elements = head[1:]
    sets: dict[str, list[str]] = {}
    for n, line in enumerate(lines[1:], start=2):
        _expect(":" in line, f"line {n}: expected 'Name: member ...'")
        name, _, rest = line.partition(":")
        name = name.strip()
        _expect(bool(name), f"line {n}: set name is empty")
        _expect(name not in sets, f"line {n}: duplicate set name {name!r}")
        sets[name] = rest.split()
    instance = SetCoverInstance.make(elements, sets)
    problems = instance.validate()
    _expect(not problems, "invalid cover instance: " + "; ".join(problems))
    return instance


def format_cover(instance: SetCoverInstance) -> str:
    lines = ["elements " + " ".join(instance.elements)]
    order = {e: n for n, e in enumerate(instance.elements)}
    for name, members in instance.sets:
        lines.append(f"{name}: " + " ".join(sorted(members, key=order.__getitem__)))
    return "\n".join(lines) + "\n"


# -- strategy trees -----------------------------------------------------------


def tree_to_document(tree: StrategyTree) -> dict:
    if isinstance(tree, Leaf):
        return {
            "type": "leaf",
            "verdict": tree.verdict.value,
            "consistent": sorted(tree.consistent),
        }
    return {
        "type": "branch",
        "input": tree.input,
        "children": {o: tree_to_document(child) for o, child in tree.children.items()},
    }


def document_to_tree(doc: Any) -> StrategyTree:
    _expect(isinstance(doc, dict), "tree node must be an object")
    kind = doc.get("type")
    if kind == "leaf":
        verdict = doc.get("verdict")
        _expect(verdict in (Verdict.CORRECT.value, Verdict.INCORRECT.value),
                "leaf 'verdict' must be 'correct' or 'incorrect'")
        names = _string_array(doc, "consistent")
        return Leaf(Verdict(verdict), frozenset(names))
    _expect(kind == "branch", "tree node 'type' must be 'leaf' or 'branch'")
    input_symbol = doc.get("input")
    _expect(isinstance(input_symbol, str), "branch 'input' must be a string")
    children = doc.get("children")
    _expect(isinstance(children, dict) and children, "branch 'children' must be a non-empty object")
    return Branch(input_symbol, {o: document_to_tree(child) for o, child in children.items()})


def tree_to_dot(tree: StrategyTree) -> str:
    """Graphviz rendering; leaves read CORRECT/INCORRECT plus the surviving names."""
    lines = ["digraph strategy {", "  node [fontname=\"Helvetica\"];"]
    counter = {"n": 0}

    def emit(node: StrategyTree) -> str:
        ident = f"n{counter['n']}"
        counter["n"] += 1
        if isinstance(node, Leaf):
            names = ", ".join(sorted(node.consistent))
            lines.append(f'  {ident} [shape=box label="{node.verdict.value.upper()} {{{names}}}"];')
        else:
            lines.append(f'  {ident} [shape=ellipse label="{node.input}"];')
            for o, child in node.children.items():
                child_id = emit(child)
                lines.append(f'  {ident} -> {child_id} [label="{o}"];')
        return ident

    emit(tree)
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- numeric scenarios and factored specs -------------------------------------


def document_to_numeric(doc: Any) -> NumericScenario:
    _expect(isinstance(doc, dict), "document must be a JSON object")
    inputs = _string_array(doc, "inputs")
    raw_functions = doc.get("functions")
    _expect(isinstance(raw_functions, list), "field 'functions' must be an array")
    functions = []
    for n, raw in enumerate(raw_functions):
        where = f"functions[{n}]"
        _expect(isinstance(raw, dict), f"field '{where}' must be an object")
        name = raw.get("name")
        _expect(isinstance(name, str) and bool(name), f"field '{where}.name' must be a non-empty string")
        table = raw.get("table")
        _expect(isinstance(table, dict), f"field '{where}.table' must be an object")
        parsed = {}
        for i, cell in table.items():
            _expect(isinstance(cell, list) and cell, f"field '{where}.table.{i}' must be a non-empty array")
            for item in cell:
                _expect(isinstance(item, (int, float)) and not isinstance(item, bool),
                        f"field '{where}.table.{i}' must contain numbers")
            parsed[i] = tuple(float(v) for v in cell)
        functions.append(NumericFunction(name, parsed))
    correct = _string_array(doc, "correct")
    margin = doc.get("margin")
    _expect(isinstance(margin, (int, float)) and not isinstance(margin, bool),
            "field 'margin' must be a number")
    ns = NumericScenario(tuple(inputs), tuple(functions), frozenset(correct), float(margin))
    problems = ns.validate()
    _expect(not problems, "invalid numeric scenario: " + "; ".join(problems))
    return ns


def numeric_to_document(ns: NumericScenario) -> dict:
    return {
        "inputs": list(ns.inputs),
        "functions": [
            {"name": f.name, "table": {i: list(f.table[i]) for i in ns.inputs}}
            for f in ns.functions
        ],
        "correct": [f.name for f in ns.functions if f.name in ns.correct],
        "margin": ns.margin,
    }


def _named_options(doc: Any, key: str) -> list[tuple[str, tuple[str, ...]]]:
    value = doc.get(key)
    _expect(isinstance(value, list), f"field '{key}' must be an array")
    out = []
    for n, raw in enumerate(value):
        where = f"{key}[{n}]"
        _expect(isinstance(raw, dict), f"field '{where}' must be an object")
        name = raw.get("name")
        _expect(isinstance(name, str) and bool(name), f"field '{where}.name' must be a non-empty string")
        options = raw.get("options")
        _expect(isinstance(options, list) and options, f"field '{where}.options' must be a non-empty array")
        for item in options:
            _expect(isinstance(item, str), f"field '{where}.options' must contain strings")
        out.append((name, tuple(options)))
    return out


def document_to_factored(doc: Any) -> FactoredSpec:
    """Parse a factored spec; ``behavior`` is optional (counting needs none)."""
    _expect(isinstance(doc, dict), "document must be a JSON object")
    axes = _named_options(doc, "axes")
    faults = _named_options(doc, "faults") if doc.get("faults") is not None else []
    max_faults = doc.get("max_faults")
    _expect(isinstance(max_faults, int) and not isinstance(max_faults, bool) and max_faults >= 0,
            "field 'max_faults' must be a non-negative integer")
    inputs = _string_array(doc, "inputs") if doc.get("inputs") is not None else []
    outputs = _string_array(doc, "outputs") if doc.get("outputs") is not None else []
    behavior = None
    raw_behavior = doc.get("behavior")
    if raw_behavior is not None:
        _expect(isinstance(raw_behavior, list), "field 'behavior' must be an array")
        axis_names = [name for name, _ in axes]
        behavior = {}
        for n, raw in enumerate(raw_behavior):
            where = f"behavior[{n}]"
            _expect(isinstance(raw, dict), f"field '{where}' must be an object")
            choices_obj = raw.get("choices")
            _expect(isinstance(choices_obj, dict), f"field '{where}.choices' must be an object")
            _expect(set(choices_obj) == set(axis_names),
                    f"field '{where}.choices' must pick one option per axis")
            choices = tuple(choices_obj[a] for a in axis_names)
            faults_obj = raw.get("faults", {})
            _expect(isinstance(faults_obj, dict), f"field '{where}.faults' must be an object")
            fault_order = {name: pos for pos, (name, _) in enumerate(faults)}
            for fam in faults_obj:
                _expect(fam in fault_order, f"field '{where}.faults' names unknown family {fam!r}")
            assignment = tuple(
                sorted(faults_obj.items(), key=lambda item: fault_order[item[0]])
            )
            table = raw.get("table")
            _expect(isinstance(table, dict), f"field '{where}.table' must be an object")
            parsed = {}
            for i, cell in table.items():
                _expect(isinstance(cell, list) and cell, f"field '{where}.table.{i}' must be a non-empty array")
                parsed[i] = frozenset(cell)
            behavior[(choices, assignment)] = parsed
    spec = FactoredSpec(
        axes=tuple(axes),
        faults=tuple(faults),
        max_faults=max_faults,
        inputs=tuple(inputs),
        outputs=tuple(outputs),
        behavior=behavior,
    )
    problems = spec.validate()
    _expect(not problems, "invalid factored spec: " + "; ".join(problems))
    return spec


def factored_to_document(spec: FactoredSpec) -> dict:
    doc: dict[str, Any] = {
        "axes": [{"name": name, "options": list(options)} for name, options in spec.axes],
        "faults": [{"name": name, "options": list(options)} for name, options in spec.faults],
        "max_faults": spec.max_faults,
        "inputs": list(spec.inputs),
        "outputs": list(spec.outputs),
    }
    if spec.behavior is not None:
        axis_names = [name for name, _ in spec.axes]
        doc["behavior"] = [
            {
                "choices": dict(zip(axis_names, choices)),
                "faults": dict(assignment),
                "table": {i: sorted(cell) for i, cell in table.items()},
            }
            for (choices, assignment), table in spec.behavior.items()
        ]
    return doc
