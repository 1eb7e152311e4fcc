import json
import math
import os

import numpy as np
import pytest

from radialgas import (BoundaryCondition, builtin_case, case_ids, config_text,
                       parse_config, run_case)
from radialgas.errors import ConfigError
from radialgas.initial_data import PrescribedCharacterIC, SinusoidalIC
from radialgas.output import (fmt, read_snapshot, sha256_of, write_heatmap,
                              write_snapshot)
from tests.conftest import make_field


class TestBuiltinCases:
    def test_case1_parameters(self):
        cfg = builtin_case("case1")
        assert cfg.model.K == 7.75e4 and cfg.model.gamma == 1.4 and cfg.model.m == 1
        assert (cfg.ic.alpha0, cfg.ic.beta0) == (-3.0, -3.0)
        assert (cfg.ic.v_a, cfg.ic.h_c) == (10.0, 1.0)
        assert (cfg.grid.b, cfg.grid.L) == (10.0, 20.0)
        assert cfg.bc is BoundaryCondition.NEUMANN_ZERO_GRADIENT
        assert cfg.params.courant == 0.1
        assert cfg.params.varrho == 1.0 and cfg.params.theta == 1.0
        assert cfg.params.zeta1 == 2.0 and cfg.params.zeta2 == 2.0

    def test_case2_flips_sign(self):
        cfg = builtin_case("case2")
        assert (cfg.ic.alpha0, cfg.ic.beta0) == (3.0, 3.0)

    def test_case3_family(self):
        cfg = builtin_case("case3_eps10")
        assert isinstance(cfg.ic, SinusoidalIC)
        assert cfg.ic.eps == 10.0 and cfg.ic.rho_const == 5.0
        assert cfg.model.K == 1.0 and cfg.model.gamma == 3.0
        assert cfg.bc is BoundaryCondition.PERIODIC
        assert cfg.grid.L - cfg.grid.b == pytest.approx(2 * math.pi, rel=1e-12)
        assert builtin_case("case3_eps0.1").ic.eps == 0.1

    def test_cases_4_to_7(self):
        c4 = builtin_case("case4")
        assert (c4.ic.alpha0, c4.ic.beta0, c4.ic.v_a, c4.ic.h_c) == (-1300.0, -1300.0, 3400.0, 343.0)
        assert (c4.grid.b, c4.grid.L) == (1.0, 5.0)
        c5 = builtin_case("case5")
        assert (c5.ic.alpha0, c5.ic.beta0) == (1300.0, 1300.0)
        c6 = builtin_case("case6")
        assert (c6.ic.alpha0, c6.ic.beta0, c6.ic.v_a) == (1300.0, -1300.0, -3400.0)
        c7 = builtin_case("case7")
        assert (c7.ic.alpha0, c7.ic.beta0, c7.ic.v_a) == (1300.0, 1300.0, -3400.0)

    def test_unknown_id(self):
        with pytest.raises(ConfigError, match="case9.*valid ids"):
            builtin_case("case9")


class TestParseConfig:
    def test_round_trip_builtin(self):
        for cid in case_ids():
            cfg = builtin_case(cid)
            assert parse_config(config_text(cfg)) == cfg

    def test_comments_and_blanks(self):
        text = config_text(builtin_case("case1")) + "\n# trailing comment\n\n"
        assert parse_config(text) == builtin_case("case1")

    def test_courant_strict_bound(self):
        text = config_text(builtin_case("case1")).replace("courant = 0.1", "courant = 0.5")
        with pytest.raises(ConfigError, match="strict"):
            parse_config(text)

    def test_theta_bound(self):
        text = config_text(builtin_case("case1")).replace("theta = 1.0", "theta = 3")
        with pytest.raises(ConfigError, match="theta"):
            parse_config(text)

    def test_unknown_key_line_number(self):
        text = "K = 1\nwhatever = 3\n"
        with pytest.raises(ConfigError, match="line 2"):
            parse_config(text)

    def test_missing_required(self):
        with pytest.raises(ConfigError, match="missing required"):
            parse_config("K = 1\ngamma = 1.4\n")

    def test_duplicate_key(self):
        text = config_text(builtin_case("case1")) + "K = 2\n"
        with pytest.raises(ConfigError, match="duplicate"):
            parse_config(text)

    def test_mixed_ic_keys_rejected(self):
        text = config_text(builtin_case("case1")) + "eps = 3\n"
        with pytest.raises(ConfigError, match="does not apply"):
            parse_config(text)

    def test_bad_value_type(self):
        with pytest.raises(ConfigError, match="bad value"):
            parse_config("K = banana\n")


class TestWriters:
    def test_snapshot_line_count(self, tmp_path, air_model):
        from radialgas import RadialGrid
        grid = RadialGrid(10.0, 20.0, 4)
        field = make_field(grid, air_model, np.full(4, 1.2243), np.full(4, 5.0))
        path = tmp_path / "snap.csv"
        write_snapshot(field, 0.0, path, air_model)
        lines = path.read_text().splitlines()
        assert len(lines) == 5
        assert lines[0] == "r,rho,u,p,h,alpha,beta,c1,c2"

    def test_snapshot_round_trip_bits(self, tmp_path, air_model):
        from radialgas import RadialGrid
        grid = RadialGrid(10.0, 20.0, 32)
        rng = np.random.default_rng(0)
        field = make_field(grid, air_model, rng.uniform(1.0, 2.0, 32),
                           rng.uniform(-5.0, 5.0, 32))
        path = tmp_path / "snap.csv"
        write_snapshot(field, 0.0, path, air_model)
        data = read_snapshot(path)
        assert np.array_equal(data["rho"], field.rho)
        assert np.array_equal(data["u"], field.u)
        assert np.array_equal(data["r"], grid.centers)

    def test_heatmap_shape(self, tmp_path):
        radii = np.linspace(1, 2, 8)
        times = [0.0, 0.5, 1.0]
        mat = np.arange(24.0).reshape(3, 8)
        path = tmp_path / "hm.csv"
        write_heatmap(mat, times, radii, path)
        lines = path.read_text().splitlines()
        assert len(lines) == 4
        assert lines[0].startswith("t\\r,")
        assert all(len(line.split(",")) == 9 for line in lines)

    def test_fmt_round_trip(self):
        for x in (1.0, math.pi, 2.6e-13, -3.4e17, 0.1):
            assert float(fmt(x)) == x


class TestRunCase:
    def test_artifacts_and_manifest(self, tmp_path):
        import dataclasses
        cfg = dataclasses.replace(builtin_case("case3_eps0.1").with_cells(32),
                                  t_end=0.05, snapshots=3)
        report = run_case(cfg, str(tmp_path / "out"))
        assert report.status == "completed"
        out = report.output_dir
        names = sorted(os.listdir(out))
        assert "manifest.json" in names
        assert "snapshot_0000.csv" in names and "snapshot_0002.csv" in names
        assert "heatmap_alpha.csv" in names and "heatmap_beta.csv" in names
        assert "curve_0000.csv" in names and "events.csv" in names
        manifest = json.loads((tmp_path / "out" / "manifest.json").read_text())
        # every artifact present with a matching checksum
        for name in names:
            if name == "manifest.json":
                continue
            assert manifest["files"][name] == sha256_of(os.path.join(out, name))
        assert set(manifest["files"]) == set(names) - {"manifest.json"}
        assert parse_config(manifest["config"]) == cfg

    def test_snapshot_count_and_times(self, tmp_path):
        import dataclasses
        cfg = dataclasses.replace(builtin_case("case3_eps0.1").with_cells(32),
                                  t_end=0.05, snapshots=4)
        report = run_case(cfg, str(tmp_path / "o"))
        assert len(report.snapshots) == 4
        assert report.snapshots[0].time == 0.0
        assert report.snapshots[-1].time == pytest.approx(0.05, abs=1e-12)
        times = [s.time for s in report.snapshots]
        assert times == sorted(times)

    def test_unwritable_output_dir(self, tmp_path):
        cfg = builtin_case("case3_eps10")
        blocked = tmp_path / "file"
        blocked.write_text("x")
        with pytest.raises(OSError):
            run_case(cfg, str(blocked / "sub"))

    def test_error_recorded_in_manifest(self, tmp_path):
        import dataclasses
        cfg = builtin_case("case1").with_cells(16)
        # sonic anchor: synthesis fails, run reports error status
        cfg = dataclasses.replace(
            cfg, ic=PrescribedCharacterIC(-3.0, -3.0, 1.0, 1.0, 10.0),
            t_end=0.01, snapshots=2)
        report = run_case(cfg, str(tmp_path / "err"))
        assert report.status == "error"
        manifest = json.loads((tmp_path / "err" / "manifest.json").read_text())
        assert manifest["status"] == "error"
        assert "sonic" in manifest["error"].lower()


class TestConvergenceStudy:
    def test_static_gas_reports_exact(self, tmp_path, air_model):
        import dataclasses
        from radialgas import PrimitiveField, convergence_study
        cfg = dataclasses.replace(builtin_case("case2"), t_end=1e-6, snapshots=2)

        def static_ic(c):
            rho = np.full(c.grid.N, 1.2243)
            return PrimitiveField.from_rho_u(c.grid, rho, np.zeros(c.grid.N), c.model)

        table = convergence_study(cfg, (64, 128, 256), str(tmp_path),
                                  ic_builder=static_ic)
        for name in ("rho", "u", "p", "h"):
            assert table[name][-1][3] == "exact", (name, table[name])
        text = (tmp_path / "convergence.csv").read_text()
        assert "exact" in text

    def test_aborts_on_blowup(self, tmp_path):
        import dataclasses
        from radialgas import convergence_study
        from radialgas.runner import StudyAborted
        cfg = dataclasses.replace(builtin_case("case1"), t_end=1.0, snapshots=2)
        with pytest.raises(StudyAborted, match="512"):
            convergence_study(cfg, (256, 512), str(tmp_path))
