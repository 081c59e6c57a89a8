import json

import pytest

from adaptest.cli import main
from adaptest.formats import dumps_scenario, loads_scenario
from adaptest.generators import builtin_cas, cas_variant


@pytest.fixture()
def cas_file(tmp_path):
    path = tmp_path / "cas.json"
    path.write_text(dumps_scenario(builtin_cas()), encoding="utf-8")
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestDecideAndOptimize:
    def test_optimize_prints_two(self, capsys, cas_file):
        code, out, _ = run(capsys, "optimize", cas_file)
        assert (code, out.strip()) == (0, "2")

    def test_decide_yes_no_exit_codes(self, capsys, cas_file):
        assert run(capsys, "decide", cas_file, "-k", "2")[:2] == (0, "YES\n")
        assert run(capsys, "decide", cas_file, "-k", "1")[:2] == (1, "NO\n")

    def test_decide_forced_first_near(self, capsys, cas_file):
        assert run(capsys, "decide", cas_file, "-k", "2", "--first", "near")[0] == 1
        assert run(capsys, "decide", cas_file, "-k", "3", "--first", "near")[0] == 0

    def test_decide_modes_agree(self, capsys, cas_file):
        early = run(capsys, "decide", cas_file, "-k", "2", "--mode", "early")
        literal = run(capsys, "decide", cas_file, "-k", "2", "--mode", "literal")
        assert early[:2] == literal[:2]

    def test_decide_without_k_anywhere_is_a_usage_error(self, capsys, cas_file):
        code, _, err = run(capsys, "decide", cas_file)
        assert code == 2
        assert "depth bound" in err

    def test_k_from_the_document_is_used(self, capsys, tmp_path):
        path = tmp_path / "with_k.json"
        path.write_text(dumps_scenario(builtin_cas(), k=2), encoding="utf-8")
        assert run(capsys, "decide", str(path))[0] == 0

    def test_optimize_infeasible(self, capsys, tmp_path):
        path = tmp_path / "variant.json"
        path.write_text(dumps_scenario(cas_variant("f7-brake-nondet")), encoding="utf-8")
        code, out, _ = run(capsys, "optimize", str(path))
        assert (code, out.strip()) == (1, "INFEASIBLE")

    def test_parse_error_exits_2_and_names_the_field(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"inputs": "nope"}', encoding="utf-8")
        code, _, err = run(capsys, "optimize", str(path))
        assert code == 2
        assert "'inputs'" in err

    def test_missing_file_exits_2(self, capsys):
        code, _, err = run(capsys, "optimize", "/nonexistent.json")
        assert code == 2 and "cannot read" in err


class TestStrategy:
    def test_json_tree(self, capsys, cas_file):
        code, out, _ = run(capsys, "strategy", cas_file, "-k", "2")
        assert code == 0
        doc = json.loads(out)
        assert doc["input"] == "inter"
        assert set(doc["children"]) == {"nothing", "turn", "brake", "both"}

    def test_dot_tree(self, capsys, cas_file):
        code, out, _ = run(capsys, "strategy", cas_file, "-k", "2", "--dot")
        assert code == 0 and out.startswith("digraph strategy")

    def test_undecidable_depth_exits_1(self, capsys, cas_file):
        code, _, err = run(capsys, "strategy", cas_file, "-k", "1")
        assert code == 1 and "INFEASIBLE" in err


class TestReduceAndApprox:
    def test_reduce_qbf_then_decide_chain(self, capsys, tmp_path):
        formula = tmp_path / "f.qbf"
        formula.write_text("k 2\nx2 -y1\n-x2 y1\n", encoding="utf-8")
        code, out, _ = run(capsys, "reduce", "qbf", str(formula))
        assert code == 0
        scenario, k = loads_scenario(out)
        assert k == 2
        assert len(scenario.functions) == 6 and len(scenario.inputs) == 8
        reduced = tmp_path / "reduced.json"
        reduced.write_text(out, encoding="utf-8")
        assert run(capsys, "decide", str(reduced))[0] == 0  # uses the embedded k

    def test_reduce_msc_and_approx(self, capsys, tmp_path):
        cover = tmp_path / "c.txt"
        cover.write_text("elements e1 e2\na: e1\nb: e2\nc: e1 e2\n", encoding="utf-8")
        code, out, _ = run(capsys, "reduce", "msc", str(cover))
        assert code == 0
        scenario_file = tmp_path / "sc.json"
        scenario_file.write_text(out, encoding="utf-8")
        assert run(capsys, "optimize", str(scenario_file))[:2] == (0, "1\n")
        code, out, _ = run(capsys, "approx", str(scenario_file))
        assert code == 0 and out.split() == ["c"]


class TestOracleCommand:
    def test_oracle_agrees_with_optimize(self, capsys, cas_file):
        assert run(capsys, "oracle", cas_file)[:2] == (0, "2\n")

    def test_oracle_guard_exits_2(self, capsys, tmp_path):
        code, out, _ = run(
            capsys, "generate", "random", "--seed", "1", "--inputs", "7",
            "--outputs", "2", "--functions", "3", "--correct", "1",
        )
        assert code == 0
        path = tmp_path / "big.json"
        path.write_text(out, encoding="utf-8")
        code, _, err = run(capsys, "oracle", str(path))
        assert code == 2 and "guard" in err


class TestGenerate:
    def test_generate_cas_round_trips(self, capsys):
        code, out, _ = run(capsys, "generate", "cas")
        assert code == 0
        scenario, _ = loads_scenario(out)
        assert scenario == builtin_cas()

    def test_generate_cas_variant(self, capsys):
        code, out, _ = run(capsys, "generate", "cas-variant", "f7-nothing")
        scenario, _ = loads_scenario(out)
        assert scenario.by_name["f7"].table["far"] == {"turn", "nothing"}

    def test_generate_random_is_reproducible(self, capsys):
        args = ["generate", "random", "--seed", "5", "--inputs", "3", "--outputs", "3",
                "--functions", "5", "--correct", "2", "--nondet-density", "0.4"]
        first = run(capsys, *args)
        second = run(capsys, *args)
        assert first == second and first[0] == 0

    def test_generate_factored_count_only(self, capsys, tmp_path):
        import adaptest.formats as formats
        from adaptest.generators import atm_paper_spec

        spec_file = tmp_path / "atm.json"
        spec_file.write_text(json.dumps(formats.factored_to_document(atm_paper_spec())), encoding="utf-8")
        code, out, _ = run(capsys, "generate", "factored", str(spec_file), "--count-only")
        assert (code, out.strip()) == (0, "144 16664 2399616")

    def test_generate_factored_expansion(self, capsys, tmp_path):
        import adaptest.formats as formats
        from adaptest.generators import mini_atm

        spec_file = tmp_path / "mini.json"
        spec_file.write_text(json.dumps(formats.factored_to_document(mini_atm())), encoding="utf-8")
        code, out, _ = run(capsys, "generate", "factored", str(spec_file))
        scenario, _ = loads_scenario(out)
        assert len(scenario.functions) == 28

    def test_every_emitted_document_reparses_cleanly(self, capsys, tmp_path):
        import adaptest.formats as formats
        from adaptest.generators import mini_atm
        from adaptest import validate_scenario

        mini_file = tmp_path / "mini.json"
        mini_file.write_text(json.dumps(formats.factored_to_document(mini_atm())), encoding="utf-8")
        cover = tmp_path / "c.txt"
        cover.write_text("elements e1 e2\nS1: e1 e2\n", encoding="utf-8")
        formula = tmp_path / "f.qbf"
        formula.write_text("k 1\nx1\n", encoding="utf-8")
        emitters = [
            ["generate", "cas"],
            ["generate", "cas-variant", "f7-brake-nondet"],
            ["generate", "random", "--seed", "9", "--inputs", "2", "--outputs", "2",
             "--functions", "4", "--correct", "1", "--nondet-density", "0.5"],
            ["generate", "factored", str(mini_file)],
            ["reduce", "msc", str(cover)],
            ["reduce", "qbf", str(formula)],
        ]
        for argv in emitters:
            code, out, _ = run(capsys, *argv)
            assert code == 0, argv
            scenario, _ = loads_scenario(out)
            assert validate_scenario(scenario) == [], argv

    def test_generate_discretize(self, capsys, tmp_path):
        doc = {
            "inputs": ["a"],
            "functions": [
                {"name": "f", "table": {"a": [1.4]}},
                {"name": "fp", "table": {"a": [1.5]}},
            ],
            "correct": ["f"],
            "margin": 0.2,
        }
        src = tmp_path / "numeric.json"
        src.write_text(json.dumps(doc), encoding="utf-8")
        code, out, _ = run(capsys, "generate", "discretize", str(src))
        scenario, _ = loads_scenario(out)
        assert len(scenario.outputs) == 3
