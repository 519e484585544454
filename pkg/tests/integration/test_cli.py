"""
Tests for CLI functionality.

Covers the exit-code contract of every command:
- solve: 0 converged, 1 input or check failure, 2 not converged / diverged
- check: 0 iff every check passes
- gen: seeded instance files and the oracle report
- config init / show
"""

import json
from pathlib import Path

import numpy as np
import pytest
from typer.testing import CliRunner

from geptrace.cli import app
from geptrace.utils import read_matrix

runner = CliRunner()

SOLVE_FLAGS = ["--step", "0.05", "--max-iters", "20000"]


def _output(result) -> str:
    return " ".join(result.output.split())


@pytest.fixture(autouse=True)
def isolated_cwd(tmp_path, monkeypatch):
    """Run every command in an empty directory so no geptrace.yaml is picked up."""
    monkeypatch.chdir(tmp_path)


class TestSolveCommand:
    """Tests for the solve command."""

    def test_solve_help(self):
        """Test that solve help works."""
        result = runner.invoke(app, ["solve", "--help"])
        assert result.exit_code == 0
        assert "--max-iters" in result.output
        assert "conservative" in result.output

    def test_solve_diagonal_instance(self, matrix_dir, tmp_path):
        """Test A = diag(3, 2, 1), B = I, k = 2 converges to h = 5."""
        out = tmp_path / "report.json"
        result = runner.invoke(app, [
            "solve",
            "--a", str(matrix_dir / "diag3.txt"),
            "--b", str(matrix_dir / "identity3.txt"),
            "--k", "2",
            "--out", str(out),
            *SOLVE_FLAGS,
        ])
        assert result.exit_code == 0, result.output
        data = json.loads(out.read_text())
        assert data["instance"]["spectrum"]["top_k_sum"] == pytest.approx(5.0)
        assert data["optimizer"]["terminal_h"] == pytest.approx(5.0, abs=1e-6)
        assert data["instance"]["a_source"].endswith("diag3.txt")
        assert data["exit_status"] == 0

    def test_solve_default_b_is_identity(self, matrix_dir, tmp_path):
        """Test that omitting --b solves the standard problem."""
        out = tmp_path / "report.json"
        result = runner.invoke(app, [
            "solve", "--a", str(matrix_dir / "diag3.txt"), "--k", "1", "--out", str(out), *SOLVE_FLAGS,
        ])
        assert result.exit_code == 0, result.output
        assert json.loads(out.read_text())["oracle_eigenvalues"] == [3.0, 2.0, 1.0]

    def test_solve_not_positive_definite(self, matrix_dir):
        """Test that an indefinite B exits 1 naming positive definiteness."""
        result = runner.invoke(app, [
            "solve",
            "--a", str(matrix_dir / "diag3.txt"),
            "--b", str(matrix_dir / "not_pd3.txt"),
            "--k", "1",
        ])
        assert result.exit_code == 1
        assert "positive definite" in _output(result)
        assert "not_pd3.txt" in _output(result)

    def test_solve_asymmetric(self, matrix_dir):
        """Test that an asymmetric A exits 1."""
        result = runner.invoke(app, ["solve", "--a", str(matrix_dir / "asymmetric3.txt"), "--k", "1"])
        assert result.exit_code == 1
        assert "not symmetric" in _output(result)

    def test_solve_parse_error_names_line(self, matrix_dir):
        """Test that a malformed file exits 1 with file and line."""
        result = runner.invoke(app, ["solve", "--a", str(matrix_dir / "short_row.txt"), "--k", "1"])
        assert result.exit_code == 1
        assert "short_row.txt:3" in _output(result)

    def test_solve_invalid_utf8(self, tmp_path):
        """Test that a non-UTF-8 matrix file exits 1 with a message naming it."""
        bad = tmp_path / "binary.txt"
        bad.write_bytes(b"\xff\xfe")
        result = runner.invoke(app, ["solve", "--a", str(bad), "--k", "1"])
        assert result.exit_code == 1
        assert not isinstance(result.exception, UnicodeDecodeError)
        assert "binary.txt" in _output(result)
        assert "UTF-8" in _output(result)

    def test_solve_shape_mismatch(self, matrix_dir, tmp_path):
        """Test that A and B of different sizes exit 1."""
        b = tmp_path / "b2.txt"
        b.write_text("2 2\n1 0\n0 1\n")
        result = runner.invoke(app, [
            "solve", "--a", str(matrix_dir / "diag3.txt"), "--b", str(b), "--k", "1",
        ])
        assert result.exit_code == 1

    def test_solve_bad_k(self, matrix_dir):
        """Test that k > d exits 1."""
        result = runner.invoke(app, ["solve", "--a", str(matrix_dir / "diag3.txt"), "--k", "4"])
        assert result.exit_code == 1

    @pytest.mark.parametrize("step", ["-1", "abc", "0"])
    def test_solve_bad_step(self, matrix_dir, step):
        """Test that invalid steps exit 1."""
        result = runner.invoke(app, [
            "solve", "--a", str(matrix_dir / "diag3.txt"), "--k", "1", "--step", step,
        ])
        assert result.exit_code == 1

    def test_solve_max_iters_exits_2(self, matrix_dir, tmp_path):
        """Test that running out of iterations exits 2 and still writes the report."""
        out = tmp_path / "report.json"
        result = runner.invoke(app, [
            "solve", "--a", str(matrix_dir / "diag3.txt"), "--k", "2",
            "--step", "0.001", "--max-iters", "3", "--out", str(out),
        ])
        assert result.exit_code == 2
        data = json.loads(out.read_text())
        assert data["optimizer"]["converged"] is False
        assert data["exit_status"] == 2

    def test_solve_diverged_exits_2(self, matrix_dir):
        """Test that a divergent step exits 2."""
        result = runner.invoke(app, [
            "solve", "--a", str(matrix_dir / "diag3.txt"), "--k", "2", "--step", "50",
        ])
        assert result.exit_code == 2
        assert "diverged" in _output(result)

    def test_solve_is_deterministic(self, tmp_path):
        """Test that a generated instance solved twice gives identical reports apart from wall time."""
        gen = runner.invoke(app, [
            "gen", "--d", "10", "--k", "3", "--spectrum", "gap:0.5", "--seed", "7",
            "--out-a", "A.txt", "--out-b", "B.txt", "--report", "gen.json",
        ])
        assert gen.exit_code == 0, gen.output

        reports = []
        for name in ("first.json", "second.json"):
            runner.invoke(app, [
                "solve", "--a", "A.txt", "--b", "B.txt", "--k", "3", "--seed", "7",
                "--step", "0.02", "--max-iters", "20000", "--out", name,
            ])
            data = json.loads(Path(name).read_text())
            data["optimizer"].pop("wall_time_s")
            reports.append(data)
        assert reports[0] == reports[1]

    def test_solve_uses_config_file(self, matrix_dir, tmp_path):
        """Test that ascent settings come from the config file."""
        config = tmp_path / "cfg.yaml"
        config.write_text("ascent:\n  step_size: 0.05\n  max_iters: 2\n")
        result = runner.invoke(app, [
            "solve", "--a", str(matrix_dir / "diag3.txt"), "--k", "1",
            "--config", str(config), "--out", "r.json",
        ])
        assert result.exit_code == 2
        assert json.loads(Path("r.json").read_text())["optimizer"]["step_size"] == 0.05


class TestCheckCommand:
    """Tests for the check command."""

    def test_check_random_all(self, tmp_path):
        """Test a seeded random sweep over every suite."""
        out = tmp_path / "checks.json"
        result = runner.invoke(app, ["check", "--random", "3", "--suite", "all", "--seed", "1", "--out", str(out)])
        assert result.exit_code == 0, result.output
        data = json.loads(out.read_text())
        assert data["passed"] is True
        assert data["metadata"]["mode"] == "random"
        assert data["summary"]["failed"] == 0
        assert len(data["suites"]) == 11

    def test_check_is_deterministic(self, tmp_path):
        """Test that equal seeds give byte-identical JSON, with or without workers."""
        base = ["check", "--random", "4", "--suite", "rayleigh,chain,perspective", "--seed", "3"]
        runner.invoke(app, base + ["--out", "one.json"])
        runner.invoke(app, base + ["--out", "two.json", "--workers", "3"])
        assert Path("one.json").read_bytes() == Path("two.json").read_bytes()

    def test_check_vonneumann_identity(self, matrix_dir, tmp_path):
        """Test that X = Y = I records an equality."""
        out = tmp_path / "checks.json"
        identity = str(matrix_dir / "identity3.txt")
        result = runner.invoke(app, ["check", "--suite", "vonneumann", "--a", identity, "--w", identity, "--out", str(out)])
        assert result.exit_code == 0, result.output
        (check,) = json.loads(out.read_text())["checks"]
        assert check["equality_case"] == "equality"
        assert check["equality_verified"] is True
        assert check["trial"] == -1

    def test_check_asymmetric_file(self, matrix_dir):
        """Test that an asymmetric A exits 1."""
        result = runner.invoke(app, ["check", "--suite", "rayleigh", "--a", str(matrix_dir / "asymmetric3.txt")])
        assert result.exit_code == 1

    def test_check_degenerate_maximizer(self, matrix_dir, tmp_path):
        """Test the unconstrained check on a non-orthonormal maximizer with lambda_k = 0."""
        w = tmp_path / "w.txt"
        w.write_text("4 3\n1 0 0\n0 1 0\n0 0 2\n0 0 0\n")
        identity = tmp_path / "i4.txt"
        identity.write_text("4 4\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n")
        result = runner.invoke(app, [
            "check", "--suite", "unconstrained", "--a", str(matrix_dir / "rank2_4.txt"),
            "--b", str(identity), "--w", str(w), "--out", "c.json",
        ])
        assert result.exit_code == 0, result.output
        (check,) = json.loads(Path("c.json").read_text())["checks"]
        assert check["equality_case"] == "equality"

    def test_check_constrained_top_frame(self, matrix_dir):
        """Test the constrained check on a top-2 frame given as files."""
        result = runner.invoke(app, [
            "check", "--suite", "constrained",
            "--a", str(matrix_dir / "diag3.txt"),
            "--b", str(matrix_dir / "identity3.txt"),
            "--w", str(matrix_dir / "top2_frame3.txt"),
            "--out", "c.json",
        ])
        assert result.exit_code == 0, result.output
        assert json.loads(Path("c.json").read_text())["checks"][0]["equality_verified"] is True

    def test_check_missing_matrix(self, matrix_dir):
        """Test that a suite lacking inputs exits 1 naming the flag."""
        result = runner.invoke(app, ["check", "--suite", "constrained", "--a", str(matrix_dir / "diag3.txt"), "--k", "1"])
        assert result.exit_code == 1
        assert "--b" in _output(result)

    def test_check_unknown_suite(self):
        """Test that an unknown suite exits 1."""
        result = runner.invoke(app, ["check", "--random", "1", "--suite", "nonsense"])
        assert result.exit_code == 1

    def test_check_csv_export(self, tmp_path):
        """Test CSV export alongside JSON."""
        csv_path = tmp_path / "checks.csv"
        result = runner.invoke(app, [
            "check", "--random", "2", "--suite", "svd-eig", "--out", "c.json", "--csv", str(csv_path),
        ])
        assert result.exit_code == 0, result.output
        lines = csv_path.read_text().splitlines()
        assert lines[0].startswith("suite,trial,name")
        assert len(lines) == 5

    def test_check_not_b_orthonormal(self, tmp_path):
        """Test that a W violating the constraint exits 1 before any verdict."""
        bad_w = tmp_path / "w.txt"
        bad_w.write_text("2 1\n1\n0\n")
        lam = tmp_path / "lam.txt"
        lam.write_text("2 2\n1 0\n0 1\n")
        b = tmp_path / "b.txt"
        b.write_text("2 2\n4 0\n0 1\n")
        result = runner.invoke(app, [
            "check", "--suite", "constrained", "--a", str(lam), "--b", str(b), "--w", str(bad_w),
        ])
        assert result.exit_code == 1
        assert "B W" in _output(result)


class TestGenCommand:
    """Tests for the gen command."""

    def test_gen_identity_b(self, tmp_path):
        """Test that spectrum 3,2,1 with B = I solves back to (3, 2, 1)."""
        result = runner.invoke(app, [
            "gen", "--d", "3", "--spectrum", "3,2,1", "--seed", "7", "--report", "gen.json",
        ])
        assert result.exit_code == 0, result.output
        np.testing.assert_array_equal(read_matrix("B.txt"), np.eye(3))
        report = json.loads(Path("gen.json").read_text())
        np.testing.assert_allclose(report["generalized_eigenvalues"], [3, 2, 1], atol=1e-12)

    def test_gen_is_deterministic(self, tmp_path):
        """Test that equal flags write identical files."""
        flags = ["gen", "--d", "6", "--spectrum", "gap:0.5", "--seed", "11", "--b-cond", "10"]
        runner.invoke(app, flags + ["--out-a", "a1.txt", "--out-b", "b1.txt", "--report", "r1.json"])
        runner.invoke(app, flags + ["--out-a", "a2.txt", "--out-b", "b2.txt", "--report", "r2.json"])
        assert Path("a1.txt").read_bytes() == Path("a2.txt").read_bytes()
        assert Path("b1.txt").read_bytes() == Path("b2.txt").read_bytes()

    def test_gen_round_trip(self, tmp_path):
        """Test that written matrices parse back to the generated values."""
        from geptrace.gep.generate import make_instance

        runner.invoke(app, ["gen", "--d", "4", "--spectrum", "4,3,2,1", "--seed", "2", "--b-cond", "5", "--report", "r.json"])
        instance = make_instance(4, "4,3,2,1", b_cond=5.0, seed=2)
        np.testing.assert_array_equal(read_matrix("A.txt"), instance.A)
        np.testing.assert_array_equal(read_matrix("B.txt"), instance.B)

    def test_gen_rank_deficient(self, tmp_path):
        """Test a rank-deficient spectrum with k = 3."""
        result = runner.invoke(app, [
            "gen", "--d", "4", "--k", "3", "--spectrum", "2,1,0,0", "--report", "r.json",
        ])
        assert result.exit_code == 0, result.output
        report = json.loads(Path("r.json").read_text())
        assert report["top_k_sum"] == pytest.approx(3.0)
        assert report["unique_top_k"] is False

    def test_gen_planted(self, tmp_path):
        """Test that --planted keeps the requested generalized spectrum."""
        runner.invoke(app, [
            "gen", "--d", "4", "--spectrum", "4,3,2,1", "--b-cond", "8", "--planted", "--report", "r.json",
        ])
        report = json.loads(Path("r.json").read_text())
        np.testing.assert_allclose(report["generalized_eigenvalues"], [4, 3, 2, 1], atol=1e-9)

    @pytest.mark.parametrize("spectrum", ["1,2,3", "3,2", "gap:oops"])
    def test_gen_bad_spectrum(self, spectrum):
        """Test that bad spectra exit 1."""
        result = runner.invoke(app, ["gen", "--d", "3", "--spectrum", spectrum])
        assert result.exit_code == 1
        assert "spectrum" in _output(result)


class TestConfigCommands:
    """Tests for config init and show."""

    def test_config_init(self, tmp_path):
        """Test creating the default config file."""
        result = runner.invoke(app, ["config", "init"])
        assert result.exit_code == 0
        assert Path("geptrace.yaml").exists()

    def test_config_init_refuses_overwrite(self, tmp_path):
        """Test that an existing file needs --force."""
        runner.invoke(app, ["config", "init"])
        assert runner.invoke(app, ["config", "init"]).exit_code == 1
        assert runner.invoke(app, ["config", "init", "--force"]).exit_code == 0

    def test_config_show_section(self, tmp_path):
        """Test showing one section."""
        result = runner.invoke(app, ["config", "show", "--section", "tolerances"])
        assert result.exit_code == 0
        assert "ineq_tol" in result.output

    def test_config_show_unknown_section(self):
        """Test that an unknown section exits 1."""
        result = runner.invoke(app, ["config", "show", "--section", "nope"])
        assert result.exit_code == 1

    def test_invalid_config_exits_1(self, matrix_dir, tmp_path):
        """Test that a broken config file stops the command."""
        Path("geptrace.yaml").write_text("ascent:\n  step_size: -3\n")
        result = runner.invoke(app, ["solve", "--a", str(matrix_dir / "diag3.txt"), "--k", "1"])
        assert result.exit_code == 1


class TestVersionCommand:
    """Tests for the version command."""

    def test_version(self):
        """Test version output."""
        result = runner.invoke(app, ["version"])
        assert result.exit_code == 0
        assert "geptrace v" in result.output
