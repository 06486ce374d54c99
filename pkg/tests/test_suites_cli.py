"""Verification suites, report schema, sweep, and the command-line interface."""

import json
import math

import numpy as np
import pytest

from bhsurf.cli import main
from bhsurf.suites import (
    HOPF_SETTINGS,
    SUITE_NAMES,
    TABLE_SETTINGS,
    SuiteConfig,
    run_suite,
    sample_points,
    sweep,
)


class TestRunSuite:
    @pytest.mark.parametrize("name", ["geometry-tables", "sphere-in-s3", "sol-cmc"])
    def test_named_suites_pass(self, name):
        report = run_suite(name)
        assert report.passed
        assert report.suite == name
        assert report.duration_ms > 0

    def test_unknown_suite(self):
        with pytest.raises(ValueError, match="unknown suite"):
            run_suite("does-not-exist")

    def test_report_schema(self):
        report = run_suite("sphere-in-s3")
        payload = report.to_dict()
        assert set(payload) == {"suite", "config", "checks", "pass", "duration_ms"}
        for check in payload["checks"]:
            assert set(check) == {"id", "desc", "residual", "tol", "pass", "margin"}
        # config echoes grids, steps, tolerances, and the seed
        for key in ("surface_grid", "table_grid", "step", "fd_step", "seed", "tol_residual"):
            assert key in payload["config"]
        json.loads(report.to_json())  # serializable

    def test_determinism_excluding_duration(self):
        a = run_suite("hopf-circle")
        b = run_suite("hopf-circle")
        assert a.body_digest_input() == b.body_digest_input()

    def test_tolerance_config_propagates(self):
        cfg = SuiteConfig(tol_residual=1e-3)
        report = run_suite("sphere-in-s3", cfg)
        tols = {c.id: c.tol for c in report.checks}
        assert tols["sphere-proper-pi4"] == 1e-3

    def test_sol_suite_never_proper(self):
        report = run_suite("sol-cmc")
        for check in report.checks:
            if check.id.startswith("sol-candidate-"):
                assert check.passed
                assert "proper_biharmonic" not in check.desc.split("verdict=")[1].split()[0]

    def test_hopf_settings_cover_acceptance_list(self):
        assert (1.0, 0.0) in HOPF_SETTINGS
        assert (1.0, 1.0) in HOPF_SETTINGS
        assert (0.25, 0.0) in HOPF_SETTINGS
        assert any(abs(l - math.sqrt(2.0)) < 1e-15 for _, l in HOPF_SETTINGS)

    def test_table_settings_cover_acceptance_list(self):
        assert set(TABLE_SETTINGS) == {
            (0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (1.0, 2.0), (0.25, 0.0), (-0.125, 0.0)
        }


class TestSampling:
    def test_sample_points_deterministic(self):
        from bhsurf import BCVModel

        model = BCVModel(1.0, 1.0)
        a = sample_points(model, 10, seed=0)
        b = sample_points(model, 10, seed=0)
        assert a == b
        c = sample_points(model, 10, seed=1)
        assert a != c

    def test_sample_points_valid(self):
        from bhsurf import BCVModel, metric_at

        model = BCVModel(-0.125, 0.0)
        for p in sample_points(model, 50, seed=0):
            metric_at(model, p)  # must not raise


class TestSweep:
    def test_rows_and_window(self, tmp_path):
        rows = sweep((0.25, 1.0), (0.0, 2.0), (3, 3), out_path=tmp_path / "s.csv")
        assert len(rows) == 9
        by_key = {(round(r["m"], 6), round(r["l"], 6)): r for r in rows}
        boundary = by_key[(1.0, 2.0)]
        assert boundary["verdict"] == "minimal-only"
        assert boundary["R"] is None
        proper = by_key[(1.0, 0.0)]
        assert proper["verdict"] == "proper_biharmonic"
        assert proper["R"] == pytest.approx(1.0 / math.sqrt(8.0))
        quarter = by_key[(0.25, 0.0)]
        assert quarter["kappa_g"] == pytest.approx(1.0)
        assert quarter["H"] == pytest.approx(0.5)
        text = (tmp_path / "s.csv").read_text()
        assert text.splitlines()[0].startswith("m,l,window")
        assert len(text.splitlines()) == 10

    def test_json_output(self, tmp_path):
        out = tmp_path / "rows.json"
        rows = sweep((1.0, 1.0), (0.0, 0.0), (1, 1), out_path=out, fmt="json")
        parsed = json.loads(out.read_text())
        assert parsed == json.loads(json.dumps(rows))

    def test_negative_m_rows_are_minimal_only(self):
        rows = sweep((-0.125, -0.125), (0.0, 0.0), (1, 1))
        assert rows[0]["verdict"] == "minimal-only"

    def test_bad_steps(self):
        with pytest.raises(ValueError, match="steps"):
            sweep((0.0, 1.0), (0.0, 1.0), (0, 3))


class TestCli:
    def test_suite_exit_code_and_report(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        code = main(["suite", "sphere-in-s3", "--out", str(out)])
        captured = capsys.readouterr()
        assert code == 0
        assert "[PASS] sphere-proper-pi4" in captured.out
        payload = json.loads(out.read_text())
        assert payload["suite"] == "sphere-in-s3"
        assert payload["pass"] is True

    def test_suite_csv_format(self, tmp_path):
        out = tmp_path / "report.csv"
        code = main(["suite", "sphere-in-s3", "--out", str(out), "--format", "csv"])
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "id,desc,residual,tol,pass,margin"
        assert len(lines) == 6

    def test_out_dir_environment(self, tmp_path, monkeypatch):
        monkeypatch.setenv("BHSURF_OUT_DIR", str(tmp_path / "nested"))
        code = main(["suite", "sphere-in-s3", "--out", "r.json"])
        assert code == 0
        assert (tmp_path / "nested" / "r.json").exists()

    def test_failing_tolerance_gives_exit_one(self):
        # an absurdly tight tolerance cannot be met by stencil-based residuals
        code = main(["suite", "sphere-in-s3", "--tol", "1e-14"])
        assert code == 1

    def test_unknown_surface_usage_error(self, capsys):
        with pytest.raises(SystemExit):
            main(["residual", "--surface", "nope"])

    def test_residual_subcommand(self, capsys):
        code = main(["residual", "--surface", "hopf-circle", "--m", "1", "--l", "0"])
        captured = capsys.readouterr()
        assert code == 0
        payload = json.loads(captured.out)
        assert payload["verdict"]["classification"] == "proper_biharmonic"
        assert abs(payload["residual_at_center"]["normal_residual"]) < 1e-6

    def test_residual_perturbed_surface(self, capsys):
        code = main(
            ["residual", "--surface", "hopf-circle", "--m", "1", "--l", "0", "--scale", "1.05"]
        )
        payload = json.loads(capsys.readouterr().out)
        assert code == 0
        assert payload["verdict"]["classification"] == "not_biharmonic"
        assert abs(payload["residual_at_center"]["bcv_triple"][0]) > 1e-2

    def test_residual_sphere_and_plane(self, capsys):
        code = main(["residual", "--surface", "geodesic-sphere", "--c", "1", "--rho", str(math.pi / 3)])
        payload = json.loads(capsys.readouterr().out)
        assert code == 0
        assert payload["verdict"]["classification"] == "not_biharmonic"

        code = main(["residual", "--surface", "plane", "--model", "sol", "--axis", "z"])
        payload = json.loads(capsys.readouterr().out)
        assert code == 0
        assert payload["verdict"]["classification"] == "minimal"
        assert payload["residual_at_center"]["sol_triple"][0] == pytest.approx(4.0, abs=1e-9)

    def test_sweep_subcommand(self, tmp_path, capsys):
        out = tmp_path / "sweep.csv"
        code = main(
            ["sweep", "--m-range", "0.25:1", "--l-range", "0:0", "--steps", "2x1", "--out", str(out)]
        )
        assert code == 0
        lines = out.read_text().splitlines()
        assert len(lines) == 3

    def test_config_file_and_flag_precedence(self, tmp_path, capsys):
        cfg = tmp_path / "bhsurf.cfg"
        cfg.write_text("# defaults for this run\ntol = 1e-3\nseed = 7\n")
        code = main(["suite", "sphere-in-s3", "--config", str(cfg)])
        assert code == 0
        out = tmp_path / "r.json"
        # flag overrides the file value
        code = main(
            ["suite", "sphere-in-s3", "--config", str(cfg), "--tol", "1e-6", "--out", str(out)]
        )
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["config"]["tol_residual"] == 1e-6
        assert payload["config"]["seed"] == 7

    def test_bad_config_line(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("tol 1e-3\n")
        code = main(["suite", "sphere-in-s3", "--config", str(cfg)])
        assert code == 2
        assert "error:" in capsys.readouterr().err
