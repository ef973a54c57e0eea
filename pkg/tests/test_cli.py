import csv
import io
import json
import subprocess
import sys
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from ripp.cli import main

GOLDEN = Path(__file__).parent / "golden"
WORKED_FLAGS = ["--case", "D", "--rate", "0.03", "--t-a", "1", "--t-b", "2", "--dx-a", "1000", "--dx-b", "2500"]


def _schema(name):
    return json.loads(resources.files("ripp").joinpath(f"schema/{name}").read_text())


REPORT_SCHEMA = _schema("report.schema.json")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    assert code == 0, err
    report = json.loads(out)
    jsonschema.validate(report, REPORT_SCHEMA)
    return report


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestEvaluate:
    def test_worked_example(self, capsys):
        r = run_json(capsys, "evaluate", *WORKED_FLAGS, "--wealth0", "500")
        assert r["case"] == "D" and r["preference"] == "EarlierPreferred"
        assert r["g_a"] == {"value": 1.10871261948, "units": "1/yr"}
        assert r["g_b"]["value"] == pytest.approx(0.9010, abs=1e-4)

    def test_rich_prefers_later(self, capsys):
        assert run_json(capsys, "evaluate", *WORKED_FLAGS, "--wealth0", "5500")["preference"] == "LaterPreferred"

    def test_human_output(self, capsys):
        code, out, _ = run(capsys, "evaluate", *WORKED_FLAGS, "--wealth0", "500")
        assert code == 0
        assert "g_a = 1.1087 1/yr" in out and "EarlierPreferred" in out and "case D" in out

    def test_case_a_note(self, capsys):
        r = run_json(capsys, "evaluate", "--case", "A", "--t-a", "1", "--t-b", "2", "--dx-a", "1", "--dx-b", "2", "--wealth0", "0")
        assert r["preference"] == "LaterPreferred"
        assert r["note"].startswith("no discounting in this specification")

    def test_document_with_flag_override(self, capsys, tmp_path):
        doc = {"t0": 0, "t_a": 1, "t_b": 2, "dx_a": 1000, "dx_b": 2500, "wealth0": 500,
               "dynamics": {"type": "multiplicative", "rate": 0.03}, "time_frame": "adaptive"}
        jsonschema.validate(doc, _schema("problem.schema.json"))
        path = tmp_path / "p.json"
        path.write_text(json.dumps(doc))
        assert run_json(capsys, "evaluate", str(path))["preference"] == "EarlierPreferred"
        assert run_json(capsys, "evaluate", str(path), "--wealth0", "5500")["preference"] == "LaterPreferred"

    @pytest.mark.parametrize(
        "doc",
        [
            {"t_a": 1, "t_b": 2, "dx_a": 1, "dx_b": 2, "wealth0": 1, "dynamics": {"type": "additive", "rate": 0},
             "time_frame": "fixed", "colour": "red"},
            {"t_a": 1, "t_b": 2, "dx_a": 1, "dx_b": 2, "wealth0": 1, "dynamics": {"type": "linear", "rate": 0},
             "time_frame": "fixed"},
            {"t_a": 1, "t_b": 2, "dx_a": 1, "dx_b": 2, "wealth0": 1, "time_frame": "fixed"},
        ],
    )
    def test_schema_violation_exit_2(self, capsys, tmp_path, doc):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(doc))
        code, _, err = run(capsys, "evaluate", str(path))
        assert code == 2 and "schema violation" in err

    def test_missing_file_exit_2(self, capsys, tmp_path):
        assert run(capsys, "evaluate", str(tmp_path / "none.json"))[0] == 2

    def test_invalid_problem_exit_2(self, capsys):
        code, _, err = run(capsys, "evaluate", "--case", "C", "--t-a", "2", "--t-b", "1", "--dx-a", "1", "--dx-b", "2", "--wealth0", "0")
        assert code == 2

    def test_nonpositive_wealth_exit_3(self, capsys):
        code, _, err = run(capsys, "evaluate", *WORKED_FLAGS, "--wealth0", "0")
        assert code == 3 and "positive wealth" in err

    def test_argparse_error_exit_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["evaluate", "--case", "E"])
        assert exc.value.code == 2


class TestCurve:
    def test_curve_rows(self, capsys):
        code, out, _ = run(capsys, "curve", "--all-forms", "--d-max", "1", "--step", "0.5")
        assert code == 0
        r = rows(out)
        assert r[0] == {"D": "0", "hybrid": "1", "hyperbolic": "1", "exponential": "1"}
        assert r[-1] == {"D": "1", "hybrid": "0.264065472681", "hyperbolic": "0.393939393939", "exponential": "0.670320046036"}

    def test_monotone(self, capsys):
        for case in ("B", "C", "hybrid"):
            _, out, _ = run(capsys, "curve", "--case", case, "--horizon", "0.65", "--rate", "0.4")
            deltas = [float(r["delta"]) for r in rows(out)]
            assert all(a > b for a, b in zip(deltas, deltas[1:]))

    def test_numeric_columns(self, capsys):
        code, out, _ = run(capsys, "curve", "--case", "DNumeric", "--horizon", "0.65", "--rate", "0.4",
                           "--wealth0", "1e6", "--dx-b", "1", "--d-min", "1", "--d-max", "1")
        assert code == 0
        (row,) = rows(out)
        assert float(row["delta"]) == pytest.approx(0.264065431322, rel=1e-11)
        assert row["dx_a_star"] == row["delta"] and row["error"] == ""

    def test_numeric_needs_wealth(self, capsys):
        assert run(capsys, "curve", "--case", "numeric", "--horizon", "1", "--rate", "0.1", "--dx-b", "1")[0] == 2

    def test_bad_step(self, capsys):
        assert run(capsys, "curve", "--case", "B", "--rate", "0.1", "--step", "0")[0] == 2

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "c.csv"
        assert run(capsys, "curve", "--all-forms", "--out", str(path))[0] == 0
        assert path.read_bytes() == (GOLDEN / "discount_curves.csv").read_bytes()


class TestReversal:
    def test_case_c(self, capsys):
        r = run_json(capsys, "reversal", "--case", "C", "--t-a", "5", "--t-b", "6", "--dx-a", "100", "--dx-b", "200")
        assert r["closed"]["H_pr"] == 1.0 and r["closed"]["t0_pr"] == 4.0

    def test_delay_only(self, capsys):
        r = run_json(capsys, "reversal", "--case", "C", "--delay", "1", "--dx-a", "100", "--dx-b", "200")
        assert r["closed"] == {"exists": True, "H_pr": 1.0}

    def test_case_d_none_exit_0(self, capsys):
        r = run_json(capsys, "reversal", "--case", "D", "--rate", "0.05", "--delay", "1", "--dx-a", "100",
                     "--dx-b", "101", "--wealth0", "1000", "--mode", "numeric")
        assert r["numeric"]["exists"] is False and "dx_b > dx_a*exp(r*D)" in r["numeric"]["reason"]

    def test_case_d_small_payments_agree(self, capsys):
        r = run_json(capsys, "reversal", "--case", "D", "--rate", "0.03", "--delay", "1", "--dx-a", "1e-6",
                     "--dx-b", "2e-6", "--wealth0", "1")
        assert r["relative_difference"] < 1e-3

    @pytest.mark.parametrize("case", ["A", "B"])
    def test_no_reversal_cases(self, capsys, case):
        r = run_json(capsys, "reversal", "--case", case, "--rate", "0.03", "--delay", "1", "--dx-a", "1", "--dx-b", "2", "--wealth0", "5")
        assert r["closed"]["exists"] is False

    def test_sweep(self, capsys):
        r = run_json(capsys, "reversal", "--case", "C", "--delay", "1", "--dx-a", "100", "--dx-b", "200", "--sweep", "--points", "5")
        assert [s["sign"] for s in r["sweep"]] == [1, 1, 0, -1, -1]

    def test_sweep_csv(self, capsys):
        code, out, _ = run(capsys, "reversal", "--case", "C", "--delay", "1", "--dx-a", "100", "--dx-b", "200", "--sweep", "--points", "3")
        assert code == 0 and "H,g_a_minus_g_b,sign" in out

    def test_numeric_needs_wealth(self, capsys):
        assert run(capsys, "reversal", "--case", "D", "--rate", "0.03", "--delay", "1", "--dx-a", "1", "--dx-b", "2")[0] == 2

    def test_needs_spec(self, capsys):
        assert run(capsys, "reversal", "--delay", "1", "--dx-a", "1", "--dx-b", "2")[0] == 2


class TestWealthThreshold:
    def test_worked_parameters(self, capsys):
        r = run_json(capsys, "wealth-threshold", *WORKED_FLAGS)
        assert r["x_pr"] == pytest.approx(2277, abs=1)

    def test_none(self, capsys):
        r = run_json(capsys, "wealth-threshold", *WORKED_FLAGS[:-1], "2000")
        assert r["exists"] is False

    def test_sweep_values(self, capsys):
        _, out, _ = run(capsys, "wealth-threshold", *WORKED_FLAGS, "--sweep", "--x-values", "500", "5500")
        r = rows(out)
        assert float(r[0]["g_a_minus_g_b"]) == pytest.approx(0.208, abs=1e-3)
        assert float(r[1]["g_a_minus_g_b"]) == pytest.approx(-0.016, abs=1e-3)

    def test_only_case_d(self, capsys):
        assert run(capsys, "wealth-threshold", "--case", "C", "--t-a", "1", "--t-b", "2", "--dx-a", "1", "--dx-b", "9")[0] == 2


class TestSimulate:
    def test_compare_case_c(self, capsys):
        r = run_json(capsys, "simulate", "--case", "C", "--rate", "1", "--seed", "7", "--count", "5000", "--compare")
        growth = {p["policy"]: p["realized_growth"] for p in r["policies"]}
        assert max(growth, key=growth.get) == "growth-optimal"

    def test_case_a_rows_identical(self, capsys, tmp_path):
        run(capsys, "simulate", "--case", "A", "--seed", "3", "--count", "500", "--compare", "--out", str(tmp_path / "a.csv"))
        assert (tmp_path / "a_growth_optimal.csv").read_bytes() == (tmp_path / "a_always_later.csv").read_bytes()
        assert (tmp_path / "a_exponential_0.03.csv").exists()

    def test_same_seed_byte_identical(self, capsys, tmp_path):
        for name in ("x.csv", "y.csv"):
            run(capsys, "simulate", "--case", "D", "--rate", "0.03", "--seed", "11", "--count", "800", "--out", str(tmp_path / name))
        assert (tmp_path / "x.csv").read_bytes() == (tmp_path / "y.csv").read_bytes()
        text = (tmp_path / "x.csv").read_text(encoding="utf-8")
        assert text.startswith("time,wealth,event_type,chosen_option\n") and "\r" not in text

    def test_human_table(self, capsys):
        code, out, _ = run(capsys, "simulate", "--case", "B", "--rate", "0.03", "--seed", "1", "--count", "50", "--policy", "exponential:0.03")
        assert code == 0 and "exponential:0.03" in out

    @pytest.mark.parametrize(
        "argv",
        [
            ["--case", "C", "--policy", "greedy"],
            ["--case", "C", "--count", "0"],
            ["--dynamics", "additive"],
            ["--case", "C", "--payment-scale", "wealth"],
        ],
    )
    def test_bad_input(self, capsys, argv):
        assert run(capsys, "simulate", "--seed", "1", *argv)[0] == 2

    def test_domain_error_exit_3(self, capsys):
        assert run(capsys, "simulate", "--case", "D", "--seed", "1", "--wealth0", "0")[0] == 3


def test_figures_match_golden(capsys, tmp_path):
    assert run(capsys, "figures", "--out-dir", str(tmp_path))[0] == 0
    golden = sorted(p.name for p in GOLDEN.glob("*.csv"))
    assert golden == sorted(p.name for p in tmp_path.glob("*.csv"))
    for name in golden:
        assert (tmp_path / name).read_bytes() == (GOLDEN / name).read_bytes(), name


def test_golden_wealth_effect_values():
    r = rows((GOLDEN / "wealth_effect.csv").read_text())
    assert [x["preference"] for x in r] == ["EarlierPreferred", "Indifferent", "LaterPreferred"]
    assert float(r[1]["wealth0"]) == pytest.approx(2277.4326, abs=1e-4)


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "ripp.cli", "evaluate", *WORKED_FLAGS, "--wealth0", "500", "--json"],
                         capture_output=True, text=True, check=True).stdout
    assert json.loads(out)["preference"] == "EarlierPreferred"
