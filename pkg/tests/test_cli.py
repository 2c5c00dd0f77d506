import math
import os
from pathlib import Path

import pytest

from beamsweep import cli, presets
from beamsweep.analysis import analyze_scenario
from beamsweep.cli import (
    ConfigError,
    RunSpec,
    build_scenario,
    dump_config_text,
    load_config_values,
    main,
    parse_config,
)
from beamsweep.core import ScenarioConfig
from beamsweep.specfun import ConvergenceError

REPO_ROOT = Path(__file__).resolve().parent.parent
FIG2_CFG = str(REPO_ROOT / "configs" / "fig2.cfg")
FIG3_CFG = str(REPO_ROOT / "configs" / "fig3.cfg")


def write_config(tmp_path, text: str) -> str:
    path = tmp_path / "scenario.cfg"
    path.write_text(text)
    return str(path)


GOOD_CONFIG = """\
# comment line
pa_dbm=10
noise_dbm=-50
theta_t=1.0471975511965976
n_antennas=128
l_total=32
d_aw=50   # trailing comment
path_exp=2
carrier_hz=2.4e9
"""


class TestConfigParsing:
    def test_shipped_presets_parse_to_library_presets(self):
        assert parse_config(FIG2_CFG) == presets.fig2_config()
        assert parse_config(FIG3_CFG) == presets.fig3_config()

    def test_good_config(self, tmp_path):
        cfg = parse_config(write_config(tmp_path, GOOD_CONFIG))
        assert isinstance(cfg, ScenarioConfig)
        assert cfg == presets.fig3_config()

    def test_defaults_filled(self, tmp_path):
        text = "\n".join(
            line for line in GOOD_CONFIG.splitlines() if not line.startswith(("path_exp", "carrier_hz"))
        )
        cfg = parse_config(write_config(tmp_path, text))
        assert cfg.path_exp == 2.0
        assert cfg.carrier_hz == 2.4e9

    def test_missing_required_key_named(self, tmp_path):
        text = "\n".join(
            line for line in GOOD_CONFIG.splitlines() if not line.startswith("l_total")
        )
        with pytest.raises(ConfigError, match="l_total"):
            parse_config(write_config(tmp_path, text))

    def test_invariant_violation_cited(self, tmp_path):
        text = GOOD_CONFIG.replace("theta_t=1.0471975511965976", "theta_t=3.0")
        with pytest.raises(ValueError, match="theta_t"):
            parse_config(write_config(tmp_path, text))

    def test_unknown_key_rejected_with_line(self, tmp_path):
        path = write_config(tmp_path, GOOD_CONFIG + "bandwidth=1e6\n")
        with pytest.raises(ConfigError, match=r":10: unknown key 'bandwidth'"):
            load_config_values(path)

    def test_duplicate_key_rejected(self, tmp_path):
        path = write_config(tmp_path, GOOD_CONFIG + "pa_dbm=11\n")
        with pytest.raises(ConfigError, match="duplicate key 'pa_dbm'"):
            load_config_values(path)

    def test_malformed_line_rejected(self, tmp_path):
        path = write_config(tmp_path, "pa_dbm 10\n")
        with pytest.raises(ConfigError, match="expected key=value"):
            load_config_values(path)

    def test_non_numeric_value_rejected(self, tmp_path):
        path = write_config(tmp_path, GOOD_CONFIG.replace("d_aw=50", "d_aw=near"))
        with pytest.raises(ConfigError, match="d_aw"):
            load_config_values(path)

    def test_integer_key_rejects_fraction(self, tmp_path):
        path = write_config(tmp_path, GOOD_CONFIG.replace("l_total=32", "l_total=32.5"))
        with pytest.raises(ConfigError, match="l_total"):
            load_config_values(path)

    def test_dump_text_reparses_identically(self, tmp_path):
        values = load_config_values(FIG3_CFG)
        dumped = dump_config_text(values)
        path = tmp_path / "echo.cfg"
        path.write_text(dumped)
        assert parse_config(str(path)) == build_scenario(values)


class TestAnalyzeCommand:
    def test_writes_one_row(self, tmp_path, capsys):
        out = tmp_path / "row.csv"
        code = main(
            ["analyze", "--config", FIG3_CFG, "--out", str(out), "--set", "m=8"]
        )
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == cli.ANALYZE_HEADER
        assert len(lines) == 2
        cells = lines[1].split(",")
        assert cells[0] == "8"
        result = analyze_scenario(presets.fig3_config(), 8)
        assert float(cells[3]) == result.alpha
        assert float(cells[4]) == result.beta
        assert abs(float(cells[5]) - (float(cells[3]) + float(cells[4]))) <= 1e-15
        assert cells[9] in ("true", "false")

    def test_dump_config_round_trip(self, tmp_path, capsys):
        code = main(["analyze", "--config", FIG3_CFG, "--dump-config"])
        assert code == 0
        echoed = capsys.readouterr().out
        path = tmp_path / "echo.cfg"
        path.write_text(echoed)
        assert parse_config(str(path)) == parse_config(FIG3_CFG)

    def test_override_changes_scenario(self, tmp_path):
        out_a = tmp_path / "a.csv"
        out_b = tmp_path / "b.csv"
        assert main(["analyze", "--config", FIG3_CFG, "--out", str(out_a)]) == 0
        assert (
            main(
                [
                    "analyze",
                    "--config",
                    FIG3_CFG,
                    "--out",
                    str(out_b),
                    "--set",
                    "d_aw=100",
                ]
            )
            == 0
        )
        phi_a = float(out_a.read_text().splitlines()[1].split(",")[2])
        phi_b = float(out_b.read_text().splitlines()[1].split(",")[2])
        assert phi_b == pytest.approx(phi_a / 4.0, rel=1e-12)

    def test_out_of_range_sector_count_fails(self, tmp_path, capsys):
        out = tmp_path / "row.csv"
        code = main(
            ["analyze", "--config", FIG3_CFG, "--out", str(out), "--set", "m=68"]
        )
        assert code == 1
        assert "feasible range" in capsys.readouterr().err

    def test_unknown_override_fails(self, tmp_path, capsys):
        code = main(
            [
                "analyze",
                "--config",
                FIG3_CFG,
                "--out",
                str(tmp_path / "x.csv"),
                "--set",
                "bogus=1",
            ]
        )
        assert code == 1
        assert "unknown override key" in capsys.readouterr().err


class TestSweepAndOptimize:
    def test_sweep_row_count_and_header(self, tmp_path):
        out = tmp_path / "curve.csv"
        assert main(["sweep-m", "--config", FIG3_CFG, "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "m,l_sector,phi_w,alpha,beta,xi,kl_exact,pinsker_lb"
        assert len(lines) == 1 + 67
        for line in lines[1:]:
            cells = line.split(",")
            assert len(cells) == 8
            assert abs(float(cells[5]) - (float(cells[3]) + float(cells[4]))) <= 1e-15

    def test_sweep_floats_round_trip(self, tmp_path):
        out = tmp_path / "curve.csv"
        assert main(["sweep-m", "--config", FIG3_CFG, "--out", str(out)]) == 0
        row = out.read_text().splitlines()[8].split(",")
        result = analyze_scenario(presets.fig3_config(), 8)
        assert float(row[3]) == result.alpha
        assert float(row[6]) == result.kl_exact

    def test_optimize_appends_summary(self, tmp_path, capsys):
        out = tmp_path / "opt.csv"
        assert main(["optimize", "--config", FIG3_CFG, "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert len(lines) == 1 + 67 + 1
        summary = lines[-1]
        assert summary.startswith("# m_star=31,xi_star=")
        assert "m_star=31" in capsys.readouterr().out

    def test_missing_config_fails(self, tmp_path, capsys):
        assert main(["sweep-m", "--out", str(tmp_path / "x.csv")]) == 1
        assert "requires --config" in capsys.readouterr().err

    def test_missing_out_fails(self, capsys):
        assert main(["sweep-m", "--config", FIG3_CFG]) == 1
        assert "requires --out" in capsys.readouterr().err

    def test_nonexistent_config_fails(self, tmp_path, capsys):
        code = main(
            ["sweep-m", "--config", str(tmp_path / "nope.cfg"), "--out", str(tmp_path / "x.csv")]
        )
        assert code == 1


class TestValidateCommand:
    def test_single_cell_passes(self, tmp_path):
        out = tmp_path / "val.csv"
        code = main(
            [
                "validate",
                "--out",
                str(out),
                "--set",
                "l_s=4",
                "--set",
                "phi_w=1",
                "--trials",
                "100000",
                "--seed",
                "42",
            ]
        )
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == cli.VALIDATE_HEADER
        assert len(lines) == 2
        cells = lines[1].split(",")
        assert cells[0] == "4"
        assert cells[-1] == "true"

    def test_byte_identical_reruns(self, tmp_path):
        args = [
            "validate",
            "--set",
            "l_s=1,4",
            "--set",
            "phi_w=0.5,2",
            "--trials",
            "20000",
            "--seed",
            "42",
        ]
        out_a = tmp_path / "a.csv"
        out_b = tmp_path / "b.csv"
        assert main(args + ["--out", str(out_a)]) == 0
        assert main(args + ["--out", str(out_b)]) == 0
        assert out_a.read_bytes() == out_b.read_bytes()

    def test_config_derived_cell_floors_samples(self, tmp_path, capsys):
        out = tmp_path / "val.csv"
        code = main(
            [
                "validate",
                "--config",
                FIG3_CFG,
                "--out",
                str(out),
                "--set",
                "m=3",
                "--trials",
                "20000",
            ]
        )
        assert code == 0
        err = capsys.readouterr().err
        assert "not divisible" in err
        cells = out.read_text().splitlines()[1].split(",")
        assert cells[0] == "10"  # floor(32 / 3)

    def test_unconfirmable_cell_exits_three(self, tmp_path):
        # 100 trials cannot resolve error probabilities near 1e-6: the
        # empirical rates are 0 with zero-width intervals, so both the first
        # run and the reseeded retry fail the three-half-width rule.
        out = tmp_path / "val.csv"
        code = main(
            [
                "validate",
                "--out",
                str(out),
                "--set",
                "l_s=1",
                "--set",
                "phi_w=1e6",
                "--trials",
                "100",
            ]
        )
        assert code == 3
        cells = out.read_text().splitlines()[1].split(",")
        assert cells[4] == "true"  # retried
        assert cells[-1] == "false"

    def test_mixing_config_and_explicit_cells_fails(self, tmp_path, capsys):
        code = main(
            [
                "validate",
                "--config",
                FIG3_CFG,
                "--out",
                str(tmp_path / "x.csv"),
                "--set",
                "l_s=4",
            ]
        )
        assert code == 1

    def test_m_without_config_fails(self, tmp_path):
        code = main(
            ["validate", "--out", str(tmp_path / "x.csv"), "--set", "m=2"]
        )
        assert code == 1


class TestReproCommand:
    def test_fig2_default_curves(self, tmp_path):
        out_dir = tmp_path / "fig2"
        assert main(["repro", "fig2", "--out", str(out_dir)]) == 0
        names = sorted(os.listdir(out_dir))
        assert names == ["fig2_noise_dbm_-50.csv", "fig2_noise_dbm_-60.csv"]
        for name in names:
            lines = (out_dir / name).read_text().splitlines()
            assert lines[0] == cli.SWEEP_HEADER
            assert len(lines) == 1 + 67

    def test_fig3_default_curves(self, tmp_path):
        out_dir = tmp_path / "fig3"
        assert main(["repro", "fig3", "--out", str(out_dir)]) == 0
        names = sorted(os.listdir(out_dir))
        assert names == ["fig3_l_total_160.csv", "fig3_l_total_32.csv"]

    def test_override_list_controls_curve_count(self, tmp_path):
        out_dir = tmp_path / "multi"
        code = main(
            ["repro", "fig2", "--out", str(out_dir), "--set", "noise_dbm=-50,-60,-70"]
        )
        assert code == 0
        assert len(os.listdir(out_dir)) == 3

    def test_unknown_preset_rejected(self, tmp_path):
        assert main(["repro", "fig9", "--out", str(tmp_path / "x")]) == 1


class TestExitCodes:
    def test_convergence_failure_maps_to_two(self, tmp_path, monkeypatch, capsys):
        def explode(cfg):
            raise ConvergenceError("synthetic non-convergence")

        monkeypatch.setattr(cli, "sweep_sectors", explode)
        code = main(["sweep-m", "--config", FIG3_CFG, "--out", str(tmp_path / "x.csv")])
        assert code == 2
        assert "synthetic non-convergence" in capsys.readouterr().err

    def test_usage_error_maps_to_one(self, capsys):
        assert main(["frobnicate"]) == 1

    def test_run_rejects_unknown_command(self):
        assert cli.run(RunSpec(command="nope", config_path=None, output_path=None)) == 1


class TestRunSpec:
    def test_defaults(self):
        spec = RunSpec(command="analyze", config_path="c", output_path="o")
        assert spec.overrides == ()
        assert spec.mc_trials is None
        assert spec.seed is None
        assert spec.preset is None
        assert not spec.dump_config
