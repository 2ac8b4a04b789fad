"""Suite orchestration (determinism, config validation) and the CLI surface."""

import json

import numpy as np
import pytest
from click.testing import CliRunner

from qsvtlab.cli import main
from qsvtlab.errors import ConfigInvalid
from qsvtlab.matio import save_matrix, save_schedule
from qsvtlab.polynomials import PhaseSchedule
from qsvtlab.suite import SUITES, SuiteConfig, run_suite


def small_config(**overrides):
    base = dict(seed=11, trials=2, max_dim=8, max_n=4)
    base.update(overrides)
    return SuiteConfig(**base)


class TestSuiteConfig:
    def test_zero_trials_invalid(self):
        with pytest.raises(ConfigInvalid):
            SuiteConfig(trials=0).validate()

    def test_unknown_suite_invalid(self):
        with pytest.raises(ConfigInvalid):
            SuiteConfig(suites=("nope",)).validate()

    def test_bad_tolerance_invalid(self):
        with pytest.raises(ConfigInvalid):
            SuiteConfig(tolerances={"eps_unit": 0.0}).validate()
        with pytest.raises(ConfigInvalid):
            SuiteConfig(tolerances={"mystery": 1.0}).validate()

    def test_from_mapping_rejects_unknown_keys(self):
        with pytest.raises(ConfigInvalid):
            SuiteConfig.from_mapping({"seeds": 3})

    def test_selected_suites_keep_registry_order(self):
        cfg = SuiteConfig(suites=("spectral", "coisometry"))
        assert cfg.selected_suites() == ("coisometry", "spectral")


class TestRunSuite:
    def test_two_suites_two_trials(self):
        cfg = small_config(suites=("coisometry", "rotated-projector"), trials=5)
        report = run_suite(cfg)
        assert report.total == 10
        assert report.passed

    def test_record_schema(self):
        report = run_suite(small_config(suites=("block-even",), trials=1))
        record = report.records[0].to_dict()
        assert set(record) == {"suite", "check", "instance", "seed", "dims", "n", "residual", "threshold", "passed"}

    def test_deterministic_per_seed(self):
        cfg = small_config(suites=("block-even", "spectral"), trials=3)
        first = run_suite(cfg)
        second = run_suite(cfg)
        assert first.records == second.records

    def test_different_seeds_differ(self):
        a = run_suite(small_config(suites=("block-even",), trials=3, seed=1))
        b = run_suite(small_config(suites=("block-even",), trials=3, seed=2))
        assert a.records != b.records

    def test_all_suites_pass_briefly(self):
        report = run_suite(small_config(trials=3))
        assert report.total == 3 * len(SUITES)
        assert report.passed, report.to_text()

    def test_report_written_to_path(self, tmp_path):
        path = tmp_path / "report.json"
        run_suite(small_config(suites=("coisometry",), report_path=str(path)))
        payload = json.loads(path.read_text())
        assert payload["summary"]["failed"] == 0
        assert payload["records"]

    def test_summary_counts_match_records(self):
        report = run_suite(small_config(trials=2))
        recomputed = sum(1 for r in report.records if r.residual <= r.threshold)
        assert report.passed_count == recomputed


class TestCli:
    def test_run_exit_zero(self):
        runner = CliRunner()
        result = runner.invoke(main, ["run", "--trials", "2", "--max-dim", "6", "--suites", "coisometry,boundary"])
        assert result.exit_code == 0, result.output
        assert "PASS" in result.output

    def test_run_machine_format(self):
        runner = CliRunner()
        result = runner.invoke(
            main, ["run", "--trials", "1", "--max-dim", "6", "--suites", "coisometry", "--format", "machine"]
        )
        assert result.exit_code == 0
        payload = json.loads(result.output)
        assert payload["summary"]["total"] == 1

    def test_run_invalid_config_exits_two(self):
        runner = CliRunner()
        result = runner.invoke(main, ["run", "--trials", "0"])
        assert result.exit_code == 2

    def test_run_unknown_suite_exits_two(self):
        runner = CliRunner()
        result = runner.invoke(main, ["run", "--suites", "bogus"])
        assert result.exit_code == 2

    def test_run_config_file_and_flag_override(self, tmp_path):
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(json.dumps({"trials": 1, "max_dim": 6, "suites": ["coisometry"], "seed": 4}))
        runner = CliRunner()
        result = runner.invoke(main, ["run", "--config", str(cfg_path), "--trials", "2", "--format", "machine"])
        assert result.exit_code == 0
        payload = json.loads(result.output)
        assert payload["summary"]["total"] == 2
        assert payload["config"]["seed"] == 4

    def test_env_var_overrides_report_path(self, tmp_path, monkeypatch):
        target = tmp_path / "env_report.json"
        monkeypatch.setenv("QSVTLAB_REPORT_PATH", str(target))
        runner = CliRunner()
        result = runner.invoke(main, ["run", "--trials", "1", "--max-dim", "6", "--suites", "coisometry"])
        assert result.exit_code == 0
        assert target.exists()

    def test_demo_known(self):
        runner = CliRunner()
        result = runner.invoke(main, ["demo", "--name", "sigma-0.6-dilation"])
        assert result.exit_code == 0
        assert "all checks passed" in result.output

    def test_demo_unknown_exits_two(self):
        runner = CliRunner()
        result = runner.invoke(main, ["demo", "--name", "nope"])
        assert result.exit_code == 2

    def test_check_file_round_trip(self, tmp_path):
        from qsvtlab.linalg import haar_unitary

        matrix_path = tmp_path / "u.json"
        schedule_path = tmp_path / "sched.json"
        save_matrix(haar_unitary(6, 5), matrix_path)
        save_schedule(PhaseSchedule(((0.3, 1.2), (2.0, 0.4)), 0.9), schedule_path)
        runner = CliRunner()
        result = runner.invoke(
            main,
            [
                "check-file",
                "--matrix",
                str(matrix_path),
                "--schedule",
                str(schedule_path),
                "--domain-dim",
                "2",
                "--codomain-dim",
                "4",
                "--format",
                "machine",
            ],
        )
        assert result.exit_code == 0, result.output
        payload = json.loads(result.output)
        assert payload["passed"] is True
        assert payload["dims"] == [6, 2, 4]

    def test_check_file_rejects_non_unitary(self, tmp_path):
        matrix_path = tmp_path / "u.json"
        save_matrix(np.eye(3) * 2.0, matrix_path)
        runner = CliRunner()
        result = runner.invoke(main, ["check-file", "--matrix", str(matrix_path)])
        assert result.exit_code == 1

    def test_check_file_malformed_exits_two(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{}")
        runner = CliRunner()
        result = runner.invoke(main, ["check-file", "--matrix", str(bad)])
        assert result.exit_code == 2
