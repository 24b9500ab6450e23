"""Command-line behavior: commands, exit codes, canonical JSON."""

import json
from pathlib import Path

from anaprop.cli import main

DATA = Path(__file__).parent / "data"
COFFEE = [str(DATA / "coffee.csv"), "--schema", str(DATA / "coffee.schema.json")]


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestApCommand:
    def test_check_true(self, capsys):
        code, out, _ = run(capsys, ["ap", "check", "0", "0", "1", "1"])
        assert code == 0 and out.strip() == "true"

    def test_check_false(self, capsys):
        code, out, _ = run(capsys, ["ap", "check", "0", "1", "1", "0"])
        assert code == 0 and out.strip() == "false"

    def test_solve_no_solution_exit_code(self, capsys):
        code, out, _ = run(capsys, ["ap", "solve", "0", "1", "1"])
        assert code == 3 and out.strip() == "NO-SOLUTION"

    def test_solve_nominal(self, capsys):
        code, out, _ = run(capsys, ["ap", "solve", "g", "g", "h"])
        assert code == 0 and out.strip() == "h"

    def test_json_payload(self, capsys):
        code, out, _ = run(capsys, ["ap", "check", "g", "h", "g", "h",
                                    "--format", "json"])
        assert code == 0
        assert json.loads(out) == {
            "command": "ap-check", "values": ["g", "h", "g", "h"], "holds": True,
        }

    def test_wrong_arity_is_usage_error(self, capsys):
        code, _, err = run(capsys, ["ap", "check", "0", "1"])
        assert code == 1 and "4 values" in err

    def test_domain_violation_is_data_error(self, capsys):
        code, _, err = run(capsys, ["ap", "check", "0", "0", "1", "2",
                                    "--domain", "0,1"])
        assert code == 2 and "domain" in err


class TestExplainCommand:
    def test_why_milk_golden(self, capsys):
        code, out, _ = run(capsys, [
            "explain", "--data", *COFFEE[:1], "--schema", COFFEE[2],
            "--query", "sit_2,no,coffee,yes,yes", "--why", "with_milk",
            "--format", "json",
        ])
        assert code == 0
        payload = json.loads(out)
        assert payload["change_attributes"] == ["situation"]
        assert payload["strength"] == 1.0
        assert payload["supported"] is True

    def test_why_sugar_golden(self, capsys):
        code, out, _ = run(capsys, [
            "explain", "--data", *COFFEE[:1], "--schema", COFFEE[2],
            "--query", "sit_2,no,coffee,yes,yes", "--why", "with_sugar",
            "--format", "json",
        ])
        assert code == 0
        assert json.loads(out)["change_attributes"] == ["contraind."]

    def test_query_by_index(self, capsys):
        code, out, _ = run(capsys, [
            "explain", "--data", *COFFEE[:1], "--schema", COFFEE[2],
            "--query-index", "1", "--why-not", "with_milk=yes",
            "--format", "json",
        ])
        assert code == 0
        assert json.loads(out)["change_attributes"] == ["situation"]

    def test_unsupported_is_exit_three(self, capsys, tmp_path):
        # A single-row table yields an adverse example but no pair support.
        table = tmp_path / "t.csv"
        table.write_text("x,res\n0,p\n")
        sidecar = tmp_path / "t.schema.json"
        sidecar.write_text(json.dumps({"attributes": [
            {"name": "x", "domain": ["0", "1"]},
            {"name": "res", "domain": ["p", "q"]},
        ]}))
        code, out, _ = run(capsys, [
            "explain", "--data", str(table), "--schema", str(sidecar),
            "--query", "1,q", "--why", "res", "--format", "json",
        ])
        assert code == 3
        assert json.loads(out)["supported"] is False

    def test_needs_exactly_one_question(self, capsys):
        code, _, err = run(capsys, [
            "explain", "--data", *COFFEE[:1], "--schema", COFFEE[2],
            "--query", "sit_2,no,coffee,yes,yes",
        ])
        assert code == 1


class TestDepsCommand:
    def test_courses_exhaustive(self, capsys):
        code, out, _ = run(capsys, [
            "deps", "--data", str(DATA / "courses.csv"), "--format", "json",
        ])
        assert code == 0
        payload = json.loads(out)
        nontrivial = {
            (tuple(f["x"]), tuple(f["y"]))
            for f in payload["findings"] if f["mvd"] and not f["trivial"]
        }
        assert (("course",), ("teacher",)) in nontrivial
        assert (("course",), ("time",)) in nontrivial

    def test_single_mode_witness_on_broken_relation(self, capsys, tmp_path):
        rows = (DATA / "courses.csv").read_text().splitlines()
        rows.remove("Maths,Paul,2pm")
        broken = tmp_path / "broken.csv"
        broken.write_text("\n".join(rows) + "\n")
        code, out, _ = run(capsys, [
            "deps", "--data", str(broken), "--mode", "single",
            "--x", "course", "--y", "teacher", "--format", "json",
        ])
        assert code == 0
        finding = json.loads(out)["finding"]
        assert finding["mvd"] is False
        assert finding["mvd_witness"][2] == ["Maths", "Paul", "2pm"]
        assert finding["lossless_join"] is False

    def test_single_tuple_relation(self, capsys, tmp_path):
        table = tmp_path / "one.csv"
        table.write_text("a,b\nx,p\n")
        sidecar = tmp_path / "one.schema.json"
        sidecar.write_text(json.dumps({"attributes": [
            {"name": "a", "domain": ["x", "y"]},
            {"name": "b", "domain": ["p", "q"]},
        ]}))
        code, out, _ = run(capsys, [
            "deps", "--data", str(table), "--schema", str(sidecar),
            "--mode", "single", "--x", "a", "--y", "b", "--format", "json",
        ])
        assert code == 0
        finding = json.loads(out)["finding"]
        assert finding["fd"] and finding["mvd"] and finding["weak_mvd"]

    def test_missing_file_is_data_error(self, capsys):
        code, _, err = run(capsys, ["deps", "--data", "/nonexistent.csv"])
        assert code == 2


class TestGenerateCommand:
    def test_monk_counts(self, capsys, tmp_path):
        out_file = tmp_path / "monk1.csv"
        code, out, _ = run(capsys, [
            "generate", "--kind", "monk1", "--out", str(out_file),
            "--format", "json",
        ])
        assert code == 0
        assert json.loads(out)["rows"] == 432
        assert len(out_file.read_text().splitlines()) == 433

    def test_affine_via_flags(self, capsys, tmp_path):
        out_file = tmp_path / "xor.csv"
        code, _, _ = run(capsys, [
            "generate", "--kind", "affine", "--n", "2", "--coeffs", "0,1,1",
            "--out", str(out_file),
        ])
        assert code == 0
        lines = out_file.read_text().splitlines()
        assert lines[0] == "x1,x2,f"
        assert [l.split(",")[-1] for l in lines[1:]] == ["0", "1", "1", "0"]

    def test_planted_rule_spec_file(self, capsys, tmp_path):
        spec = tmp_path / "spec.json"
        spec.write_text(json.dumps(
            {"rules": [{"pairs": 4, "exceptions": 1}, {"pairs": 3}]}
        ))
        out_file = tmp_path / "planted.csv"
        code, out, _ = run(capsys, [
            "generate", "--kind", "planted-rule", "--spec", str(spec),
            "--out", str(out_file), "--format", "json",
        ])
        assert code == 0 and json.loads(out)["rows"] == 14

    def test_random_relation(self, capsys, tmp_path):
        spec = tmp_path / "schema.json"
        spec.write_text(json.dumps({"attributes": [
            {"name": "a", "domain": ["0", "1"]},
            {"name": "b", "domain": ["0", "1", "2"]},
        ]}))
        out_file = tmp_path / "rel.csv"
        code, out, _ = run(capsys, [
            "generate", "--kind", "random-relation", "--spec", str(spec),
            "--tuples", "4", "--seed", "5", "--out", str(out_file),
            "--format", "json",
        ])
        assert code == 0 and json.loads(out)["rows"] == 4

    def test_seed_required_for_random_kind(self, capsys, tmp_path):
        spec = tmp_path / "schema.json"
        spec.write_text(json.dumps({"attributes": [
            {"name": "a", "domain": ["0", "1"]},
        ]}))
        code, _, err = run(capsys, [
            "generate", "--kind", "random-relation", "--spec", str(spec),
            "--tuples", "1", "--out", str(tmp_path / "r.csv"),
        ])
        assert code == 1 and "seed" in err


def test_commands_do_not_mutate_input_files(capsys, tmp_path):
    source = DATA / "coffee.csv"
    before = source.read_bytes()
    run(capsys, ["explain", "--data", str(source), "--schema", str(COFFEE[2]),
                 "--query", "sit_2,no,coffee,yes,yes", "--why", "with_milk"])
    run(capsys, ["deps", "--data", str(DATA / "courses.csv")])
    assert source.read_bytes() == before
    assert (DATA / "coffee.schema.json").exists()


class TestEvaluateCommand:
    def small_dataset(self, tmp_path):
        from anaprop.data import PlantedRule, generate_planted_rules, write_dataset
        ds, _ = generate_planted_rules(
            [PlantedRule(pairs=6), PlantedRule(pairs=6, exceptions=1)]
        )
        path = tmp_path / "small.csv"
        write_dataset(ds, path)
        return path

    def test_seed_required(self, capsys, tmp_path):
        path = self.small_dataset(tmp_path)
        code, _, err = run(capsys, ["evaluate", "--data", str(path)])
        assert code == 1 and "seed" in err

    def test_json_is_deterministic_and_time_free(self, capsys, tmp_path):
        path = self.small_dataset(tmp_path)
        argv = ["evaluate", "--data", str(path), "--strategy", "selected",
                "--folds", "3", "--seed", "4", "--subsample", "0.8",
                "--format", "json"]
        code1, out1, err1 = run(capsys, argv)
        code2, out2, _ = run(capsys, argv)
        assert code1 == code2 == 0
        assert out1 == out2
        assert "wall_time" in err1 and "wall_time" not in out1

    def test_worker_count_invariance(self, capsys, tmp_path):
        path = self.small_dataset(tmp_path)
        base = ["evaluate", "--data", str(path), "--strategy", "knn", "--k", "3",
                "--folds", "3", "--seed", "4", "--format", "json"]
        _, out1, _ = run(capsys, base + ["--workers", "1"])
        _, out3, _ = run(capsys, base + ["--workers", "3"])
        assert out1 == out3

    def test_profile_table2_fills_settings(self, capsys, tmp_path):
        path = self.small_dataset(tmp_path)
        code, out, _ = run(capsys, [
            "evaluate", "--data", str(path), "--profile", "table2",
            "--folds", "3", "--format", "json",
        ])
        assert code == 0
        config = json.loads(out)["report"]["config"]
        assert config["strategy"] == "selected"
        assert config["radius"] == 2
        assert config["subsample"] == 0.5
        assert config["seed"] == 7
        assert config["folds"] == 3  # explicit flag beats the profile

    def test_missing_required_flag_is_usage_error(self, capsys):
        code, _, _ = run(capsys, ["evaluate", "--seed", "1"])
        assert code == 1

    def test_profile_table3_runs_its_grid(self, capsys, tmp_path):
        path = self.small_dataset(tmp_path)
        code, out, _ = run(capsys, [
            "evaluate", "--data", str(path), "--profile", "table3",
            "--folds", "3", "--format", "json",
        ])
        assert code == 0
        payload = json.loads(out)
        assert payload["grid"] == [1, 3, 5, 7, 9, 11]
        assert payload["grid_parameter"] == "neighbor_budget"
        assert payload["best"]["config"]["strategy"] == "bongard"

    def test_grid_reports_best(self, capsys, tmp_path):
        path = self.small_dataset(tmp_path)
        code, out, _ = run(capsys, [
            "evaluate", "--data", str(path), "--strategy", "knn",
            "--folds", "3", "--seed", "4", "--grid", "1,3",
            "--format", "json",
        ])
        assert code == 0
        payload = json.loads(out)
        assert payload["grid"] == [1, 3]
        assert payload["grid_parameter"] == "k"
        assert len(payload["reports"]) == 2
        assert payload["best"] in payload["reports"]

    def test_unknown_strategy_is_usage_error(self, capsys, tmp_path):
        path = self.small_dataset(tmp_path)
        code, _, _ = run(capsys, [
            "evaluate", "--data", str(path), "--strategy", "magic",
            "--seed", "1",
        ])
        assert code == 1

    def test_config_problems_are_usage_errors(self, capsys, tmp_path):
        path = self.small_dataset(tmp_path)
        code, _, err = run(capsys, [
            "evaluate", "--data", str(path), "--strategy", "knn",
            "--seed", "1", "--folds", "1",
        ])
        assert code == 1 and "folds" in err
        code, _, err = run(capsys, [
            "evaluate", "--data", str(path), "--strategy", "selected",
            "--seed", "1", "--grid", "1,3",
        ])
        assert code == 1 and "grid" in err

    def test_class_column_flag(self, capsys, tmp_path):
        path = tmp_path / "mid.csv"
        path.write_text(
            "a,label,b\n0,p,x\n1,q,y\n0,p,y\n1,q,x\n0,q,x\n1,p,y\n"
        )
        code, out, _ = run(capsys, [
            "evaluate", "--data", str(path), "--class-column", "label",
            "--strategy", "knn", "--k", "1", "--folds", "2", "--seed", "2",
            "--format", "json",
        ])
        assert code == 0
        assert json.loads(out)["report"]["dataset"]["attributes"] == 2

    def test_tab_delimiter(self, capsys, tmp_path):
        path = tmp_path / "tabs.tsv"
        path.write_text("a\tres\n0\tp\n1\tq\n0\tq\n1\tp\n")
        code, out, _ = run(capsys, [
            "deps", "--data", str(path), "--delimiter", "\t",
            "--format", "json",
        ])
        assert code == 0
        assert json.loads(out)["attributes"] == ["a", "res"]

    def test_generated_monk_file_loads_with_published_counts(self, capsys, tmp_path):
        from anaprop.data import load_dataset
        out_file = tmp_path / "monk1.csv"
        code, _, _ = run(capsys, [
            "generate", "--kind", "monk1", "--out", str(out_file),
        ])
        assert code == 0
        ds = load_dataset(out_file)
        assert (len(ds), ds.schema.arity, len(ds.class_attr.domain)) == (432, 6, 2)
