"""Tests for the command-line runner: configuration, exit codes, reports."""

import json

import pytest

from focklab.cli import main
from focklab.suites import SUITES, ConfigError, validate_config


class TestConfigValidation:
    def test_defaults(self):
        cfg = validate_config({})
        assert cfg.t == 1.0
        assert cfg.suite == "full"

    def test_unknown_top_level_key(self):
        with pytest.raises(ConfigError):
            validate_config({"bogus": 1})

    def test_unknown_section_key(self):
        with pytest.raises(ConfigError):
            validate_config({"fock": {"tt": 1.0}})

    def test_bad_schema_version(self):
        with pytest.raises(ConfigError):
            validate_config({"schema": 99})

    def test_bad_ladder(self):
        with pytest.raises(ConfigError):
            validate_config({"fock": {"ladder": [32, 24]}})

    def test_trace_factor_boundary(self):
        # the trace-identity diagonal series diverges at s = t/2
        with pytest.raises(ConfigError):
            validate_config({"trace": {"s_factors": [0.5]}})

    def test_unknown_suite(self):
        with pytest.raises(ConfigError):
            validate_config({"run": {"suite": "nope"}})

    def test_bad_symbol_spec(self):
        with pytest.raises(ConfigError):
            validate_config({"symbols": [{"family": "martian"}]})


class TestCli:
    def test_list_suites(self, capsys):
        assert main(["list-suites"]) == 0
        out = capsys.readouterr().out
        for name in SUITES:
            assert name in out

    def test_run_single_suite(self, tmp_path, capsys):
        code = main(["run", "--suite", "dilation", "--out", str(tmp_path)])
        assert code == 0
        out = capsys.readouterr().out
        assert "[PASS]" in out
        report = json.loads((tmp_path / "dilation-report.json").read_text())
        assert report["n_failed"] == 0
        assert report["schema"] == 1

    def test_exit_code_on_failure(self, tmp_path):
        # an absurdly small tolerance scale forces check failures
        code = main(
            ["run", "--suite", "dilation", "--out", str(tmp_path), "--tolerance-scale", "1e-14"]
        )
        assert code == 2

    def test_exit_code_on_bad_config(self, tmp_path):
        cfg = tmp_path / "bad.toml"
        cfg.write_text("[fock]\nbogus = 1\n")
        assert main(["run", "--config", str(cfg)]) == 1

    def test_exit_code_on_missing_config(self, tmp_path):
        assert main(["run", "--config", str(tmp_path / "none.toml")]) == 1

    def test_config_file_round_trip(self, tmp_path):
        cfg = tmp_path / "cfg.toml"
        cfg.write_text('schema = 1\n\n[run]\nsuite = "dilation"\nseed = 5\n')
        out = tmp_path / "reports"
        assert main(["run", "--config", str(cfg), "--out", str(out)]) == 0
        report = json.loads((out / "dilation-report.json").read_text())
        assert report["seed"] == 5

    def test_reports_deterministic_modulo_timestamp(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        main(["run", "--suite", "kernels-weyl", "--out", str(a)])
        main(["run", "--suite", "kernels-weyl", "--out", str(b)])
        ra = json.loads((a / "kernels-weyl-report.json").read_text())
        rb = json.loads((b / "kernels-weyl-report.json").read_text())
        ra.pop("timestamp")
        rb.pop("timestamp")
        assert ra == rb

    def test_parallel_jobs_match_serial(self, tmp_path):
        a, b = tmp_path / "serial", tmp_path / "par"
        for out, jobs in ((a, "1"), (b, "2")):
            main(["run", "--suite", "dilation", "--out", str(out), "--jobs", jobs])
        ra = json.loads((a / "dilation-report.json").read_text())
        rb = json.loads((b / "dilation-report.json").read_text())
        ra.pop("timestamp")
        rb.pop("timestamp")
        assert ra == rb

    def test_csv_tables_written(self, tmp_path):
        main(["run", "--suite", "basis-norms", "--out", str(tmp_path)])
        csv_files = list(tmp_path.glob("basis-norms-*.csv"))
        assert csv_files
        header = csv_files[0].read_text().splitlines()[0]
        assert "k" in header
