"""CLI: config parsing, command dispatch, CSV schemas, determinism and exit
codes."""

import math

import pytest

from dipolewell import cli
from dipolewell.errors import ConfigError

MINIMAL = "m = 1\nalpha = 1\nrho0 = 1\nr0 = 1\nell = 0\n"


def run_cli(*argv):
    return cli.main(list(argv))


@pytest.fixture
def cfg_file(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text(MINIMAL, encoding="utf-8")
    return str(path)


class TestParseConfig:
    def test_minimal_defaults(self):
        cfg = cli.parse_config(MINIMAL)
        assert cfg.params.ell == 0
        assert cfg.n_max == 5
        assert cfg.steps == 4000
        assert cfg.energy_window is None
        assert cfg.fmt == "csv"
        assert cfg.x0_threshold == 0.1

    def test_flag_override_wins(self):
        cfg = cli.parse_config(MINIMAL, {"ell": 1, "nmax": 9})
        assert cfg.params.ell == 1
        assert cfg.n_max == 9

    def test_non_integer_ell_rejected(self):
        with pytest.raises(ConfigError):
            cli.parse_config(MINIMAL.replace("ell = 0", "ell = 0.5"))

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigError) as err:
            cli.parse_config(MINIMAL + "bogus = 3\n")
        assert "bogus" in str(err.value)
        assert "line 6" in str(err.value)

    def test_malformed_line_reports_number(self):
        with pytest.raises(ConfigError) as err:
            cli.parse_config("m = 1\nwhat is this\n")
        assert "line 2" in str(err.value)

    def test_missing_required(self):
        with pytest.raises(ConfigError) as err:
            cli.parse_config("m = 1\nalpha = 1\n")
        assert "rho0" in str(err.value)

    def test_comments_and_blanks_ignored(self):
        text = "# comment\n\n" + MINIMAL + "   # trailing comment line\n"
        assert cli.parse_config(text).params.m == 1.0

    def test_window_must_pair(self):
        with pytest.raises(ConfigError):
            cli.parse_config(MINIMAL + "window_lo = -10\n")

    def test_steps_floor(self):
        with pytest.raises(ConfigError):
            cli.parse_config(MINIMAL + "steps = 10\n")

    def test_nonfinite_rejected(self):
        with pytest.raises(ConfigError):
            cli.parse_config(MINIMAL.replace("m = 1", "m = inf"))


class TestExitCodes:
    def test_success(self, cfg_file, tmp_path):
        out = tmp_path / "s.csv"
        assert run_cli("spectrum", "--config", cfg_file, "--out", str(out)) == 0

    def test_regime_error_is_one(self, cfg_file, capsys):
        code = run_cli("spectrum", "--config", cfg_file, "--ell", "2")
        assert code == 1
        assert "oscillatory regime" in capsys.readouterr().err

    def test_bad_flag_is_one(self, cfg_file):
        assert run_cli("spectrum", "--config", cfg_file, "--bogus", "1") == 1

    def test_missing_config_file_is_one(self):
        assert run_cli("spectrum", "--config", "/nonexistent/x.cfg") == 1

    def test_bad_window_is_one(self, cfg_file, capsys):
        code = run_cli("solve", "--config", cfg_file, "--window-lo", "-50", "--window-hi", "-0.5")
        assert code == 1
        assert "window" in capsys.readouterr().err

    def test_numerical_failure_is_two(self, cfg_file, monkeypatch):
        from dipolewell.errors import AccuracyError

        def boom(cfg):
            raise AccuracyError("synthetic")

        monkeypatch.setitem(cli._DISPATCH, "spectrum", boom)
        assert run_cli("spectrum", "--config", cfg_file) == 2


class TestOutputs:
    def test_spectrum_schema_and_flags(self, cfg_file, tmp_path):
        out = tmp_path / "s.csv"
        assert run_cli("spectrum", "--config", cfg_file, "--nmax", "3", "--out", str(out)) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "# dipolewell spectrum v1"
        assert lines[1] == "# n,ell,energy,bracket,x0,tau_positive,x0_small"
        assert len(lines) == 5
        first = lines[2].split(",")
        assert first[0] == "1" and first[1] == "0"
        assert first[5] == "false" and first[6] == "true"

    def test_round_trip_exact(self, cfg_file, tmp_path):
        from dipolewell.model import SystemParams
        from dipolewell.spectrum import energy_level

        out = tmp_path / "s.csv"
        run_cli("spectrum", "--config", cfg_file, "--nmax", "2", "--out", str(out))
        lines = [l for l in out.read_text().splitlines() if not l.startswith("#")]
        params = SystemParams(m=1.0, alpha=1.0, rho0=1.0, r0=1.0, ell=0)
        for line in lines:
            cells = line.split(",")
            lv = energy_level(params, int(cells[0]))
            assert float(cells[2]) == lv.energy
            assert float(cells[3]) == lv.bracket
            assert float(cells[4]) == lv.x0

    def test_byte_determinism(self, cfg_file, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        for path in (a, b):
            assert run_cli(
                "compare", "--config", cfg_file, "--nmax", "2", "--steps", "1000",
                "--window-lo", "-12", "--window-hi", "-5", "--out", str(path),
            ) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_potential_profile_starts_at_zero(self, cfg_file, tmp_path):
        out = tmp_path / "v.csv"
        assert run_cli("potential", "--config", cfg_file, "--out", str(out)) == 0
        lines = [l for l in out.read_text().splitlines() if not l.startswith("#")]
        r0, v0 = (float(c) for c in lines[0].split(","))
        assert r0 == 1.0 and v0 == 0.0
        assert len(lines) == cli.PROFILE_INTERVALS + 1

    def test_field_profile_monotone(self, cfg_file, tmp_path):
        out = tmp_path / "e.csv"
        assert run_cli("field", "--config", cfg_file, "--out", str(out)) == 0
        rows = [l for l in out.read_text().splitlines() if not l.startswith("#")]
        vals = [float(l.split(",")[1]) for l in rows]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_tsv_format(self, cfg_file, tmp_path):
        out = tmp_path / "s.tsv"
        run_cli("spectrum", "--config", cfg_file, "--format", "tsv", "--out", str(out))
        assert "\t" in out.read_text().splitlines()[2]

    def test_compare_empty_spectrum_summary(self, cfg_file, tmp_path, capsys):
        out = tmp_path / "c.csv"
        code = run_cli(
            "compare", "--config", cfg_file, "--nmax", "3", "--steps", "1000",
            "--window-lo", "-50", "--window-hi", "-1.0001", "--out", str(out),
        )
        assert code == 0
        captured = capsys.readouterr().out
        assert "no bound states found in window" in captured
        body = [l for l in out.read_text().splitlines() if not l.startswith("#")]
        assert len(body) == 3
        assert all("formula-invalid" in l for l in body)

    def test_solve_empty(self, cfg_file, tmp_path, capsys):
        out = tmp_path / "roots.csv"
        code = run_cli(
            "solve", "--config", cfg_file, "--steps", "1000",
            "--window-lo", "-30", "--window-hi", "-2", "--out", str(out),
        )
        assert code == 0
        assert "no bound states found" in capsys.readouterr().out
        lines = out.read_text().splitlines()
        assert lines[0] == "# dipolewell solve v1"
        assert len(lines) == 2

    def test_wavefunction_profile(self, cfg_file, tmp_path, capsys):
        out = tmp_path / "wf.csv"
        code = run_cli(
            "wavefunction", "--config", cfg_file, "--steps", "1000",
            "--window-lo", "-9", "--window-hi", "-7", "--out", str(out),
        )
        assert code == 0
        rows = [l for l in out.read_text().splitlines() if not l.startswith("#")]
        rs = [float(l.split(",")[0]) for l in rows]
        assert rs[0] == 1.0
        assert all(b > a for a, b in zip(rs, rs[1:]))
        assert "window midpoint" in capsys.readouterr().out

    def test_cutoff_scan_rows(self, cfg_file, tmp_path):
        out = tmp_path / "cut.csv"
        assert run_cli("cutoff-scan", "--config", cfg_file, "--out", str(out)) == 0
        rows = [l for l in out.read_text().splitlines() if not l.startswith("#")]
        assert len(rows) == cli.CUTOFF_HALVINGS + 1
        walls = [float(l.split(",")[0]) for l in rows]
        assert walls[0] == 1.0
        assert walls[-1] == pytest.approx(2.0**-20)
        energies = [float(l.split(",")[1]) for l in rows]
        assert energies[-1] < -1e7

    def test_stdout_emission(self, cfg_file, capsys):
        assert run_cli("spectrum", "--config", cfg_file, "--nmax", "1") == 0
        outp = capsys.readouterr().out
        assert outp.startswith("# dipolewell spectrum v1")

    def test_flags_without_config_file(self, tmp_path):
        out = tmp_path / "s.csv"
        code = run_cli(
            "spectrum", "--m", "1", "--alpha", "1", "--rho0", "1", "--r0", "1",
            "--ell", "1", "--nmax", "2", "--out", str(out),
        )
        assert code == 0
        assert len(out.read_text().splitlines()) == 4
