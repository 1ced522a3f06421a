import csv
import io
import json
import math

import pytest
from click.testing import CliRunner

from shearlyap.cli import main, parse_range


@pytest.fixture()
def runner():
    return CliRunner()


def run_json(runner, args, **kwargs):
    result = runner.invoke(main, args + ["--format", "json"], **kwargs)
    assert result.exit_code == 0, result.output
    return json.loads(result.output)


def parse_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestParseRange:
    def test_single_value(self):
        assert parse_range("2.5") == [2.5]

    def test_inclusive_endpoints(self):
        assert parse_range("1:3:0.5") == [1.0, 1.5, 2.0, 2.5, 3.0]

    def test_negative_step(self):
        assert parse_range("-3:-5:-1") == [-3.0, -4.0, -5.0]

    def test_rejects_inconsistent(self):
        from shearlyap import DomainError

        with pytest.raises(DomainError):
            parse_range("1:2:-0.5")
        with pytest.raises(DomainError):
            parse_range("1:2")


class TestBoundsCommand:
    def test_text_output(self, runner):
        result = runner.invoke(main, ["bounds", "--alpha", "1", "--beta", "1"])
        assert result.exit_code == 0
        assert "envelope" in result.output
        assert "0.36886823" in result.output

    def test_json_schema(self, runner):
        rec = run_json(runner, ["bounds", "--alpha", "2", "--beta", "3"])
        assert rec["kind"] == "bound_report"
        assert rec["metadata"]["seed"] is None
        assert rec["metadata"]["tool_version"]
        assert rec["metadata"]["series_config"] == {"max_index": 64, "tail_tol": 1e-12}
        payload = rec["payload"]
        assert set(payload["per_norm"]) == {"l1", "l2", "linf"}
        assert payload["envelope"]["lower"] <= payload["envelope"]["upper"]

    def test_domain_error_exit_2(self, runner):
        result = runner.invoke(main, ["bounds", "--alpha", "0.5", "--beta", "1"])
        assert result.exit_code == 2
        assert "alpha must be >= 1" in result.output

    def test_nonconvergence_exit_3(self, runner):
        result = runner.invoke(
            main, ["bounds", "--alpha", "1", "--beta", "1", "--max-index", "8"]
        )
        assert result.exit_code == 3
        assert "increase max_index" in result.output

    def test_norm_filter(self, runner):
        rec = run_json(runner, ["bounds", "--alpha", "1", "--beta", "1", "--norms", "l2"])
        payload = rec["payload"]
        assert set(payload["per_norm"]) == {"l2"}
        assert payload["envelope"]["lower"] == payload["per_norm"]["l2"]["lower"]

    def test_bad_norm_filter(self, runner):
        result = runner.invoke(
            main, ["bounds", "--alpha", "1", "--beta", "1", "--norms", "l3"]
        )
        assert result.exit_code == 2

    def test_csv_output(self, runner):
        result = runner.invoke(
            main, ["bounds", "--alpha", "1", "--beta", "1", "--format", "csv"]
        )
        assert result.exit_code == 0
        # RFC-4180 line endings (Result.output normalizes them away)
        assert b"\r\n" in result.stdout_bytes
        rows = parse_csv(result.output)
        assert {r["norm"] for r in rows} == {"l1", "l2", "linf", "envelope"}
        l2_lower = [r for r in rows if r["norm"] == "l2" and r["side"] == "lower"][0]
        assert float(l2_lower["value"]) == pytest.approx(0.36347, abs=1e-5)
        assert float(l2_lower["value_block_scale"]) == pytest.approx(
            4 * float(l2_lower["value"]), rel=1e-12
        )

    def test_opposed_improved_has_single_upper(self, runner):
        rec = run_json(
            runner,
            ["bounds", "--alpha", "-3", "--beta", "3", "--family", "improved"],
        )
        per_norm = rec["payload"]["per_norm"]
        assert per_norm["l1"]["upper"] is None
        assert per_norm["linf"]["upper"] is not None


TABLE_EXPECT = {
    "l1": ("0.36886", "0.43835", "0.38561"),
    "l2": ("0.36347", "0.40277", "0.36864"),
    "linf": ("0.34613", "0.43835", "0.41350"),
}


class TestTable1Command:
    def test_values_five_significant_figures(self, runner):
        rec = run_json(runner, ["table1"])
        assert rec["payload"]["mc_reference"] == 0.39625
        for row in rec["payload"]["rows"]:
            lo, hi, imp = TABLE_EXPECT[row["norm"]]
            assert abs(row["global_lower"] - float(lo)) <= 1.01e-5
            assert abs(row["global_upper"] - float(hi)) <= 1.01e-5
            assert abs(row["improved"] - float(imp)) <= 1.01e-5

    def test_text_golden(self, runner):
        result = runner.invoke(main, ["table1"])
        assert result.exit_code == 0
        for token in ("0.43835", "0.40277", "0.38561", "0.36864", "0.41350", "0.39625"):
            assert token in result.output

    def test_stable_across_runs(self, runner):
        a = runner.invoke(main, ["table1", "--format", "csv"]).output
        b = runner.invoke(main, ["table1", "--format", "csv"]).output
        assert a == b


class TestSweepCommand:
    def test_envelopes_columns_and_shrinkage(self, runner):
        result = runner.invoke(
            main,
            ["sweep", "--mode", "envelopes", "--alpha", "1:10:1", "--format", "csv"],
        )
        assert result.exit_code == 0
        rows = parse_csv(result.output)
        assert list(rows[0]) == ["alpha", "beta", "norm", "family", "gap"]
        combined = {
            (float(r["alpha"]), r["family"]): float(r["gap"])
            for r in rows
            if r["norm"] == "envelope"
        }
        assert combined[(10.0, "global")] < combined[(1.0, "global")]
        for a in (1.0, 5.0, 10.0):
            assert combined[(a, "improved")] <= combined[(a, "global")] + 1e-12

    def test_gle_curve_through_origin(self, runner):
        result = runner.invoke(
            main,
            ["sweep", "--mode", "gle", "--alpha", "1", "--beta", "1",
             "--q", "-1:1:0.5", "--format", "csv"],
        )
        assert result.exit_code == 0
        rows = parse_csv(result.output)
        at_zero = [r for r in rows if float(r["q"]) == 0.0 and r["norm"] == "envelope"]
        assert at_zero and all(float(r["value"]) == 0.0 for r in at_zero)

    def test_neg_bounds_default_beta(self, runner):
        result = runner.invoke(
            main,
            ["sweep", "--mode", "neg-bounds", "--alpha", "-3:-4:-1", "--format", "csv"],
        )
        assert result.exit_code == 0
        rows = parse_csv(result.output)
        assert {float(r["beta"]) for r in rows} == {3.0, 4.0}
        improved_linf_upper = [
            r for r in rows
            if r["family"] == "improved" and r["norm"] == "linf" and r["side"] == "upper"
        ]
        assert improved_linf_upper

    def test_errors_mode_includes_mc(self, runner):
        result = runner.invoke(
            main,
            ["sweep", "--mode", "errors", "--alpha", "1", "--steps", "200000",
             "--ensembles", "8", "--seed", "5", "--format", "csv"],
        )
        assert result.exit_code == 0
        rows = parse_csv(result.output)
        assert list(rows[0]) == [
            "alpha", "beta", "norm", "family", "side", "bound", "mc", "error"
        ]
        for r in rows:
            assert float(r["error"]) == pytest.approx(
                float(r["bound"]) - float(r["mc"]), abs=1e-12
            )
        assert {r["family"] for r in rows} >= {"global", "improved", "closed_form"}

    def test_lyap_bounds_with_standard(self, runner):
        rec = run_json(
            runner,
            ["sweep", "--mode", "lyap-bounds", "--alpha", "1:2:1",
             "--standard-k", "6", "--seed", "3"],
        )
        rows = rec["payload"]["rows"]
        standard = [r for r in rows if r["family"] == "standard"]
        assert len(standard) == 2
        assert rec["metadata"]["seed"] == 3

    def test_gle_requires_single_alpha(self, runner):
        result = runner.invoke(
            main, ["sweep", "--mode", "gle", "--alpha", "1:2:1"]
        )
        assert result.exit_code == 2


class TestMcCommand:
    def test_metadata_seed_present_when_defaulted(self, runner):
        rec = run_json(
            runner,
            ["mc", "--alpha", "1", "--beta", "1", "--steps", "1e5", "--ensembles", "8"],
        )
        assert rec["metadata"]["seed"] == 0
        assert rec["payload"]["estimator"] == "lyapunov"
        assert rec["payload"]["mean"] == pytest.approx(0.396, abs=0.02)

    def test_deterministic(self, runner):
        args = ["mc", "--alpha", "1", "--beta", "1", "--steps", "1e5",
                "--ensembles", "8", "--seed", "77"]
        a = run_json(runner, args)
        b = run_json(runner, args)
        assert a["payload"]["mean"] == b["payload"]["mean"]

    def test_gle_estimator_q0(self, runner):
        rec = run_json(
            runner,
            ["mc", "--alpha", "1", "--beta", "1", "--q", "0", "--steps", "1e5",
             "--ensembles", "100"],
        )
        assert rec["payload"]["estimator"] == "gle"
        assert rec["payload"]["mean"] == 0.0

    def test_domain_guard(self, runner):
        result = runner.invoke(main, ["mc", "--alpha", "-1", "--beta", "1"])
        assert result.exit_code == 2


class TestSmallCommands:
    def test_gle_exact(self, runner):
        rec = run_json(runner, ["gle-exact", "--q", "2"])
        assert rec["payload"]["lower_arg"] == 45
        assert rec["payload"]["upper_arg"] == 79

    def test_gle_exact_out_of_range(self, runner):
        result = runner.invoke(main, ["gle-exact", "--q", "7"])
        assert result.exit_code == 2

    def test_entropy_roundtrip(self, runner):
        rec = run_json(runner, ["entropy", "--alpha", "2", "--beta", "3"])
        assert rec["payload"]["lower"] == pytest.approx(math.log(25) / 4, abs=1e-12)
        assert rec["payload"]["upper"] == pytest.approx(math.log(27) / 4, abs=1e-12)

    def test_standard_bound_exhaustive(self, runner):
        rec = run_json(
            runner, ["standard-bound", "--k", "4", "--alpha", "1", "--beta", "1"]
        )
        assert rec["payload"]["n_samples"] == 16
        assert rec["metadata"]["seed"] is None
        assert rec["payload"]["value"] > 0.39625

    def test_standard_bound_guard(self, runner):
        result = runner.invoke(
            main, ["standard-bound", "--k", "30", "--alpha", "1", "--beta", "1"]
        )
        assert result.exit_code == 2


class TestConfigAndOutput:
    def test_config_file_defaults(self, runner, tmp_path):
        cfg = tmp_path / "series.cfg"
        cfg.write_text("# series defaults\nmax_index = 96\ntail_tol = 1e-10\n")
        rec = run_json(
            runner,
            ["--config", str(cfg), "bounds", "--alpha", "1", "--beta", "1"],
        )
        assert rec["metadata"]["series_config"] == {"max_index": 96, "tail_tol": 1e-10}

    def test_config_unknown_key(self, runner, tmp_path):
        cfg = tmp_path / "series.cfg"
        cfg.write_text("truncation = 10\n")
        result = runner.invoke(
            main, ["--config", str(cfg), "bounds", "--alpha", "1", "--beta", "1"]
        )
        assert result.exit_code == 2
        assert "unknown config key" in result.output

    def test_output_dir_env(self, runner, tmp_path, monkeypatch):
        monkeypatch.setenv("SHEARLYAP_OUTPUT_DIR", str(tmp_path))
        result = runner.invoke(
            main,
            ["entropy", "--alpha", "1", "--beta", "1", "--format", "csv",
             "--output", "sub/entropy.csv"],
        )
        assert result.exit_code == 0
        written = tmp_path / "sub" / "entropy.csv"
        assert written.exists()
        rows = parse_csv(written.read_text())
        assert rows[0]["alpha"] == "1.0"

    def test_json_roundtrips(self, runner):
        rec = run_json(runner, ["gle-exact", "--q", "1"])
        again = json.loads(json.dumps(rec))
        assert again == rec
