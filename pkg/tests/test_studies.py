import os
import re

import numpy as np
import pytest

from wavevem.cli import main as cli_main
from wavevem.config import ConfigError, parse_config
from wavevem.studies import (
    CSV_HEADER,
    build_study_mesh,
    fit_rate,
    log_linear_correlation,
    pairwise_rates,
    run_h_study,
    run_p_study,
    run_single,
)

SMALL_H_CONFIG = """
[problem]
k = 4.0
n1 = 2.0
n2 = 1.0
theta_inc_deg = 75

[mesh]
family = cartesian
refinements = 2 4

[degrees]
q1 = 2
q2 = 2

[output]
csv = {csv}
"""


class TestConfig:
    def test_defaults_materialized(self):
        cfg = parse_config("[problem]\nk = 5.0\n")
        assert cfg.k == 5.0
        assert cfg.n1 == 2.0
        assert cfg.family == "cartesian"
        assert cfg.sigma_filter == 1e-13
        assert "sigma_filter = 1e-13" in cfg.resolved_text

    def test_hash_depends_only_on_resolved_content(self):
        a = parse_config("[problem]\nk = 5.0\n")
        b = parse_config("[problem]\nk = 5.0\n\n[mesh]\nfamily = cartesian\n")
        c = parse_config("[problem]\nk = 6.0\n")
        assert a.config_hash == b.config_hash
        assert a.config_hash != c.config_hash

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigError, match="unknown key"):
            parse_config("[problem]\nwavenumber = 3\n")

    def test_unknown_section_rejected(self):
        with pytest.raises(ConfigError, match="unknown config section"):
            parse_config("[extra]\nfoo = 1\n")

    def test_p_sweep_needs_list(self):
        with pytest.raises(ConfigError, match="q2_list"):
            parse_config("[degrees]\npolicy = p_sweep\n")

    def test_graded_degrees_rejected_on_aniso(self):
        with pytest.raises(ConfigError, match="anisotropic"):
            parse_config(
                "[mesh]\nfamily = graded_aniso\n[degrees]\npolicy = hp_graded\n"
            )

    def test_condition_limit_inf(self):
        cfg = parse_config("[numerics]\ncondition_limit = inf\n")
        assert cfg.condition_limit == float("inf")

    def test_mesh_families(self):
        cfg = parse_config("[mesh]\nfamily = graded_iso\nrefinements = 1 2\n")
        mesh = build_study_mesh(cfg, 2)
        assert mesh.n_elements == 10


class TestRateExtraction:
    def test_synthetic_power_law_exact(self):
        hs = np.array([0.8, 0.4, 0.2, 0.1])
        errs = 3.7 * hs**2.5
        assert fit_rate(hs, errs) == pytest.approx(2.5, abs=1e-10)
        for r in pairwise_rates(hs, errs):
            assert r == pytest.approx(2.5, abs=1e-10)

    def test_nonuniform_steps(self):
        hs = np.array([0.9, 0.5, 0.31, 0.07])
        errs = 0.2 * hs**3.25
        assert fit_rate(hs, errs) == pytest.approx(3.25, abs=1e-10)

    def test_correlation_of_exact_exponential(self):
        n = np.arange(1, 8)
        errs = 5.0 * np.exp(-1.3 * n)
        assert log_linear_correlation(n, np.log(errs)) == pytest.approx(-1.0)


class TestStudyDrivers:
    def test_h_study_schema_and_rates(self, tmp_path):
        cfg = parse_config(SMALL_H_CONFIG.format(csv=tmp_path / "h.csv"))
        rows, text = run_h_study(cfg)
        lines = text.strip().split("\n")
        assert lines[0] == "# wavevem-study h"
        assert lines[1].startswith("# config_hash=")
        assert lines[2] == CSV_HEADER
        assert len(rows) == 2
        assert any(l.startswith("# rates_h1") for l in lines)
        assert any(l.startswith("# fit_l2") for l in lines)
        written = (tmp_path / "h.csv").read_text()
        assert written == text
        resolved = (tmp_path / "h.csv.resolved.cfg").read_text()
        assert "theta_inc_deg = 75" in resolved

    def test_csv_deterministic_modulo_seconds(self, tmp_path):
        cfg = parse_config(SMALL_H_CONFIG.format(csv=tmp_path / "h.csv"))
        _, text1 = run_h_study(cfg, write=False)
        _, text2 = run_h_study(cfg, write=False)
        strip = lambda t: re.sub(r",[0-9.]+$", ",<t>", t, flags=re.M)
        assert strip(text1) == strip(text2)

    def test_p_study_rows(self, tmp_path):
        cfg = parse_config(
            "[problem]\nk = 4.0\n"
            "[mesh]\nrefinements = 4\n"
            "[degrees]\npolicy = p_sweep\nq2_list = 2 3\nq1_rule = equal\n"
            f"[output]\ncsv = {tmp_path / 'p.csv'}\n"
        )
        rows, _ = run_p_study(cfg)
        assert [r.q2 for r in rows] == [2, 3]
        assert [r.q1 for r in rows] == [2, 3]
        assert rows[0].dofs_raw >= rows[0].dofs_filtered

    def test_p_sweep_double_total_rule(self, tmp_path):
        cfg = parse_config(
            "[problem]\nk = 4.0\ntheta_inc_deg = 50\n"
            "[mesh]\nrefinements = 4\n"
            "[degrees]\npolicy = p_sweep\nq2_list = 2 2\nqt2_list = 0 1\n"
            "q1_rule = double_total\n"
            "[output]\ncsv =\n"
        )
        rows, _ = run_p_study(cfg, write=False)
        assert [(r.q1, r.q2, r.qt2) for r in rows] == [(4, 2, 0), (6, 2, 1)]

    def test_run_single_raster(self, tmp_path):
        # matched media with the incoming direction exactly in the q=3 fan
        cfg = parse_config(
            "[problem]\nk = 4.0\nn1 = 1.0\nn2 = 1.0\n"
            f"theta_inc_deg = {360.0 / 7.0!r}\n"
            "[mesh]\nrefinements = 2\n"
            "[degrees]\nq1 = 3\nq2 = 3\n"
            f"[output]\ncsv = {tmp_path / 's.csv'}\nraster = {tmp_path / 'r.csv'}\n"
            "raster_n = 11\n"
        )
        row, text, raster = run_single(cfg)
        assert row.err_h1_rel < 1e-8
        lines = raster.strip().split("\n")
        assert lines[0] == "x,y,re_exact,im_exact,re_proj,im_proj"
        assert len(lines) == 1 + 11 * 11
        data = np.array([[float(v) for v in l.split(",")] for l in lines[1:]])
        exact_vals = data[:, 2] + 1j * data[:, 3]
        proj_vals = data[:, 4] + 1j * data[:, 5]
        assert np.max(np.abs(exact_vals - proj_vals)) < 1e-6
        assert (tmp_path / "r.csv").exists()


class TestCli:
    def test_mesh_gen_and_check(self, tmp_path, capsys):
        out = tmp_path / "mesh.txt"
        assert cli_main(["mesh", "gen", "cartesian", "4", str(out)]) == 0
        assert cli_main(["mesh", "check", str(out)]) == 0
        captured = capsys.readouterr().out
        assert "16 elements" in captured
        assert "OK" in captured

    def test_mesh_check_rejects_invalid(self, tmp_path, capsys):
        bad = tmp_path / "bad.txt"
        bad.write_text("ncvem-mesh 1\nvertices 1\n0 0\nelements 1\n3 0 0 0\n")
        assert cli_main(["mesh", "check", str(bad)]) == 1
        assert "INVALID" in capsys.readouterr().err

    def test_solve_command(self, tmp_path, capsys):
        cfg = tmp_path / "solve.cfg"
        cfg.write_text(
            "[problem]\nk = 4.0\nn1 = 1.0\nn2 = 1.0\ntheta_inc_deg = 40\n"
            "[mesh]\nrefinements = 2\n"
            "[degrees]\nq1 = 3\nq2 = 3\n"
            f"[output]\ncsv = {tmp_path / 'out.csv'}\nraster =\n"
        )
        assert cli_main(["solve", str(cfg)]) == 0
        out = capsys.readouterr().out
        assert "solved" in out
        assert (tmp_path / "out.csv").exists()

    def test_study_h_command(self, tmp_path, capsys):
        cfg = tmp_path / "h.cfg"
        cfg.write_text(SMALL_H_CONFIG.format(csv=tmp_path / "h.csv"))
        assert cli_main(["study-h", str(cfg)]) == 0
        assert (tmp_path / "h.csv").exists()
        assert "results written" in capsys.readouterr().out
