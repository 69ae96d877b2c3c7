"""
Tests for the tls-complexity command line, run in-process.
"""

import dataclasses
import json
import math

import pytest

from tls_complexity.cli import main
from tls_complexity.commands import mc_check
from tls_complexity.entropy import LN2
from tls_complexity.exceptions import NonConvergenceError
from tls_complexity.exporters import CurveSpec


def run_json(capsys, argv):
    exit_code = main(argv)
    captured = capsys.readouterr()
    return exit_code, json.loads(captured.out), captured.err


class TestCurveCommand:
    """tls-complexity curve"""

    def test_writes_csv(self, tmp_path):
        # Setup
        output = tmp_path / "lz.csv"

        # Exercise
        exit_code = main(
            ["curve", "--model", "lz-diag", "--min", "0.01", "--max", "100", "--points", "400", "--log-grid"]
            + ["--output", str(output)]
        )

        # Verify
        assert exit_code == 0
        lines = output.read_text().splitlines()
        assert lines[0] == "x,S,R2,SC"
        assert len(lines) == 401
        rows = [tuple(float(v) for v in line.split(",")) for line in lines[1:]]
        peak = max(rows, key=lambda row: row[3])
        assert peak[0] == pytest.approx(1.1107, rel=0.02)

    def test_writes_to_stdout_without_output(self, capsys):
        # Exercise
        exit_code = main(["curve", "--model", "paramagnet", "--min", "0", "--max", "10", "--points", "100"])

        # Verify
        out = capsys.readouterr().out
        lines = out.splitlines()
        assert exit_code == 0
        assert lines[0] == "x,S,R2,SC"
        assert len(lines) == 101
        assert lines[1].split(",")[0] == "0.0"
        assert float(lines[1].split(",")[3]) == 0.0

    def test_ising_rows_above_critical_temperature_vanish(self, capsys):
        # Exercise
        main(["curve", "--model", "ising", "--alpha", "0", "--min", "0.3", "--max", "1.5", "--points", "200"])

        # Verify
        lines = capsys.readouterr().out.splitlines()[1:]
        for line in lines:
            x, _, _, sc = (float(v) for v in line.split(","))
            if x >= 1.0:
                assert sc == 0.0

    def test_is_byte_identical_across_runs(self, tmp_path):
        # Setup
        argv = ["curve", "--model", "box-lambda", "--chi", "0.5", "--min", "0.01", "--max", "10", "--log-grid"]

        # Exercise
        main(argv + ["--output", str(tmp_path / "a.csv")])
        main(argv + ["--output", str(tmp_path / "b.csv")])

        # Verify
        assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()

    def test_normalized(self, capsys):
        # Exercise
        main(["curve", "--model", "box-v", "--min", "1", "--max", "2", "--points", "3"])
        nats = capsys.readouterr().out.splitlines()[1:]
        main(["curve", "--model", "box-v", "--min", "1", "--max", "2", "--points", "3", "--normalized"])
        bits = capsys.readouterr().out.splitlines()[1:]

        # Verify
        for line_nats, line_bits in zip(nats, bits):
            sc_nats = float(line_nats.split(",")[3])
            sc_bits = float(line_bits.split(",")[3])
            assert sc_bits == sc_nats / LN2

    def test_refuses_to_overwrite(self, tmp_path, capsys):
        # Setup
        output = tmp_path / "curve.csv"
        output.write_text("keep")

        # Exercise
        exit_code = main(["curve", "--model", "box-v", "--min", "1", "--max", "2", "--output", str(output)])

        # Verify
        assert exit_code == 3
        assert "already exist" in capsys.readouterr().err
        assert output.read_text() == "keep"

    def test_overwrite_flag(self, tmp_path):
        output = tmp_path / "curve.csv"
        output.write_text("old")
        argv = ["curve", "--model", "box-v", "--min", "1", "--max", "2", "--output", str(output), "--overwrite"]
        assert main(argv) == 0
        assert output.read_text().startswith("x,S,R2,SC\n")

    def test_missing_output_directory_is_io_error(self, tmp_path):
        output = tmp_path / "missing" / "curve.csv"
        assert main(["curve", "--model", "box-v", "--min", "1", "--max", "2", "--output", str(output)]) == 3

    def test_invalid_grid_is_argument_error(self, capsys):
        # Exercise
        exit_code = main(["curve", "--model", "lz-diag", "--min", "0", "--max", "1", "--log-grid"])

        # Verify
        assert exit_code == 2
        assert "lo > 0" in capsys.readouterr().err

    def test_unknown_model_is_argument_error(self):
        assert main(["curve", "--model", "spin-glass", "--min", "0", "--max", "1"]) == 2

    def test_missing_zeta_is_argument_error(self):
        assert main(["curve", "--model", "bin-lambda-inv", "--min", "1", "--max", "10"]) == 2


class TestMaxCommand:
    """tls-complexity max"""

    @pytest.mark.parametrize(
        "argv,expected",
        [
            (["--model", "lz-diag"], 1.110668),
            (["--model", "lz-offd"], 0.900359),
            (["--model", "box-v"], 1.848578),
            (["--model", "bin-v"], 0.900359),
            (["--model", "bin-lambda"], 1.110668),
            (["--model", "box-lambda"], 0.540956),
            (["--model", "paramagnet"], 0.957504),
            (["--model", "ising", "--alpha", "0"], 0.776144),
        ],
    )
    def test_locates_maximum(self, capsys, argv, expected):
        # Exercise
        exit_code, record, _ = run_json(capsys, ["max"] + argv)

        # Verify
        assert exit_code == 0
        assert record["x_star"] == pytest.approx(expected, abs=1e-4)
        assert record["r_at_max"] == pytest.approx(0.743161, abs=1e-4)

    def test_record_keys(self, capsys):
        # Exercise
        _, record, _ = run_json(capsys, ["max", "--model", "bin-lambda", "--chi", "0.5"])

        # Verify
        assert list(record) == [
            "model",
            "params",
            "x_star",
            "sc_star_nats",
            "sc_star_normalized",
            "r_at_max",
            "sc_star",
            "at_boundary",
        ]
        assert record["model"] == "bin-lambda"
        assert record["params"] == {"chi": 0.5}
        assert record["sc_star_normalized"] == pytest.approx(record["sc_star_nats"] / LN2)

    def test_normalized_flag(self, capsys):
        _, nats, _ = run_json(capsys, ["max", "--model", "box-v"])
        _, bits, _ = run_json(capsys, ["max", "--model", "box-v", "--normalized"])
        assert bits["sc_star"] == pytest.approx(nats["sc_star"] / LN2)

    def test_boundary_maximum_exits_4(self, capsys):
        # Exercise
        exit_code, record, err = run_json(capsys, ["max", "--model", "lz-diag", "--min", "2", "--max", "10"])

        # Verify
        assert exit_code == 4
        assert record["x_star"] == pytest.approx(2.0, abs=1e-5)
        assert "bracket edge" in err

    def test_ising_with_field(self, capsys):
        _, record, _ = run_json(capsys, ["max", "--model", "ising", "--alpha", "0.2133"])
        assert record["x_star"] == pytest.approx(1.0, abs=0.02)

    def test_secondary_maximum_with_custom_bracket(self, capsys):
        # Exercise
        exit_code, record, _ = run_json(
            capsys, ["max", "--model", "bin-lambda-inv", "--zeta", "0.01", "--min", "4", "--max", "10000"]
        )

        # Verify
        assert exit_code == 0
        assert record["x_star"] * 0.01 == pytest.approx(1.0, rel=0.2)

    def test_linear_bracket_override(self, capsys):
        exit_code, record, _ = run_json(capsys, ["max", "--model", "box-v", "--min", "0.5", "--max", "4", "--no-log-grid"])
        assert exit_code == 0
        assert record["x_star"] == pytest.approx(1.848578, abs=1e-4)


class TestMcCheckCommand:
    """tls-complexity mc-check"""

    def test_binary_is_exact(self, capsys):
        # Exercise
        exit_code, record, _ = run_json(
            capsys, ["mc-check", "--model", "bin-lambda", "--chi", "0.3", "--tau", "1.1", "--seed", "99"]
        )

        # Verify
        assert exit_code == 0
        assert record["pass"] is True
        assert record["z_s"] == 0.0
        assert record["z_c"] == 0.0
        assert record["n"] == 2
        assert record["seed"] == 99

    def test_box_passes(self, capsys):
        # Exercise
        exit_code, record, _ = run_json(
            capsys, ["mc-check", "--model", "box-v", "--kappa", "1.8486", "--samples", "100000", "--seed", "7"]
        )

        # Verify
        assert exit_code == 0
        assert record["pass"] is True
        assert record["n"] == 100_000
        assert set(record) >= {"z_s", "z_c", "sc_abs_dev", "n", "seed", "pass"}

    @pytest.mark.slow
    def test_box_passes_at_a_million_samples(self, capsys):
        exit_code, record, _ = run_json(
            capsys, ["mc-check", "--model", "box-v", "--kappa", "1.8486", "--samples", "1000000", "--seed", "7"]
        )
        assert exit_code == 0
        assert record["pass"] is True

    def test_workers_do_not_change_output(self, capsys):
        # Setup
        argv = ["mc-check", "--model", "box-lambda", "--chi", "0.4", "--tau", "0.6", "--samples", "200000"]

        # Exercise
        _, single, _ = run_json(capsys, argv + ["--workers", "1"])
        _, several, _ = run_json(capsys, argv + ["--workers", "3"])

        # Verify
        assert single == several

    def test_zero_samples_is_argument_error(self, capsys):
        # Exercise
        exit_code = main(["mc-check", "--model", "box-v", "--kappa", "1.0", "--samples", "0"])

        # Verify
        assert exit_code == 2
        assert "--samples" in capsys.readouterr().err

    def test_wrong_parameters_are_argument_errors(self):
        assert main(["mc-check", "--model", "box-v", "--tau", "1.0"]) == 2
        assert main(["mc-check", "--model", "box-lambda", "--kappa", "1.0"]) == 2
        assert main(["mc-check", "--model", "box-lambda"]) == 2

    def test_failed_check_exits_1(self, capsys, monkeypatch):
        """A deviation beyond four standard errors is reported and exits 1."""
        # Setup
        real_compare = mc_check.compare

        def biased_compare(*args, **kwargs):
            return dataclasses.replace(real_compare(*args, **kwargs), z_c=9.5)

        monkeypatch.setattr(mc_check, "compare", biased_compare)

        # Exercise
        exit_code, record, _ = run_json(
            capsys, ["mc-check", "--model", "box-v", "--kappa", "1.0", "--samples", "10000", "--seed", "3"]
        )

        # Verify
        assert exit_code == 1
        assert record["pass"] is False
        assert record["z_c"] == 9.5

    def test_lz_models_are_not_accepted(self):
        assert main(["mc-check", "--model", "lz-diag"]) == 2


class TestBlochCommand:
    """tls-complexity bloch"""

    def test_at_lz_maximum(self, capsys):
        # Exercise
        exit_code, record, _ = run_json(capsys, ["bloch", "--model", "lz-diag", "--x", "1.110668"])

        # Verify
        assert exit_code == 0
        assert record["theta_plus_deg"] == pytest.approx(138.0, abs=0.5)
        assert record["theta_minus_deg"] == pytest.approx(42.0, abs=0.5)
        assert record["pop1"] == pytest.approx(0.8716, abs=5e-4)
        assert record["pop0"] == pytest.approx(0.1284, abs=5e-4)
        assert record["amplitude_plus"] == pytest.approx(0.93358, abs=5e-4)
        assert record["theta_plus_rad"] == pytest.approx(math.radians(record["theta_plus_deg"]))

    def test_equal_superposition(self, capsys):
        _, record, _ = run_json(capsys, ["bloch", "--model", "lz-diag", "--x", "0"])
        assert record["theta_plus_deg"] == pytest.approx(90.0)

    def test_record_keys(self, capsys):
        _, record, _ = run_json(capsys, ["bloch", "--model", "lz-offd", "--x", "0.9"])
        expected = {
            "pop1",
            "pop0",
            "theta_plus_rad",
            "theta_plus_deg",
            "theta_minus_rad",
            "theta_minus_deg",
            "phi_plus",
            "phi_minus",
        }
        assert set(record) == expected | {"amplitude_plus", "sc"}

    def test_off_diagonal_at_zero_is_argument_error(self):
        assert main(["bloch", "--model", "lz-offd", "--x", "0"]) == 2

    def test_disorder_models_are_not_accepted(self):
        assert main(["bloch", "--model", "box-v", "--x", "1"]) == 2


class TestCommandLine:
    """Dispatcher behavior shared by all commands."""

    def test_no_command_is_argument_error(self):
        assert main([]) == 2

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0
        assert "curve" in capsys.readouterr().out

    def test_version(self, capsys):
        assert main(["--version"]) == 0
        assert "tls-complexity" in capsys.readouterr().out

    def test_meta_sidecar(self, tmp_path, capsys):
        # Setup
        meta = tmp_path / "run.json"
        argv = ["max", "--model", "box-v", "--meta", str(meta)]

        # Exercise
        exit_code = main(argv)

        # Verify
        capsys.readouterr()
        assert exit_code == 0
        record = json.loads(meta.read_text())
        assert record["argv"] == argv
        assert record["command"] == "max"
        assert record["exit_code"] == 0
        assert record["options"]["model"] == "box-v"

    def test_non_convergence_exits_1(self, capsys, monkeypatch):
        # Setup
        def stalled(self, *args, **kwargs):
            raise NonConvergenceError("Golden-section search did not reach tol")

        monkeypatch.setattr(CurveSpec, "maximize", stalled)

        # Exercise
        exit_code = main(["max", "--model", "box-v"])

        # Verify
        assert exit_code == 1
        assert "did not reach tol" in capsys.readouterr().err

    @pytest.mark.parametrize(
        "argv,expected",
        [
            (["mc-check", "--model", "box-v", "--kappa", "1.0", "--samples", "0"], 2),
            (["max", "--model", "lz-diag", "--min", "0.01", "--max", "0.5"], 4),
        ],
    )
    def test_meta_sidecar_written_on_failure(self, tmp_path, capsys, argv, expected):
        # Setup
        meta = tmp_path / "run.json"

        # Exercise
        exit_code = main(argv + ["--meta", str(meta)])

        # Verify
        capsys.readouterr()
        assert exit_code == expected
        assert json.loads(meta.read_text())["exit_code"] == expected

    def test_meta_sidecar_written_on_io_error(self, tmp_path, capsys):
        # Setup
        meta = tmp_path / "run.json"
        argv = ["curve", "--model", "lz-diag", "--min", "0.1", "--max", "1", "--points", "5"]

        # Exercise
        exit_code = main(argv + ["--output", str(tmp_path / "missing" / "c.csv"), "--meta", str(meta)])

        # Verify
        capsys.readouterr()
        assert exit_code == 3
        assert json.loads(meta.read_text())["exit_code"] == 3

    def test_debug_verbosity_logs_to_stderr(self, capsys):
        main(["max", "--model", "box-v", "-v", "3"])
        assert "DEBUG" in capsys.readouterr().err
