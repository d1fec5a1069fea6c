import json

import numpy as np
import pytest

from arsharp.cli import main
from arsharp.dataio import read_series


@pytest.fixture
def series_csv(tmp_path):
    rng = np.random.default_rng(0)
    z = [0.0]
    for _ in range(79):
        z.append(z[-1] * np.sin(z[-1]) + 0.5 * rng.standard_normal())
    p = tmp_path / "series.csv"
    p.write_text("\n".join(f"{v:.17g}" for v in z) + "\n")
    return p


def run(args):
    return main([str(a) for a in args])


class TestExitCodes:
    def test_usage_error_is_2(self, capsys):
        assert run(["estimate", "--no-such-flag"]) == 2
        capsys.readouterr()

    def test_missing_file_is_3(self, tmp_path, capsys):
        code = run(["estimate", "--input", tmp_path / "nope.csv", "--h", "0.5"])
        assert code == 3
        capsys.readouterr()

    def test_degenerate_is_4(self, tmp_path, capsys):
        p = tmp_path / "const.csv"
        p.write_text("\n".join(["2.0"] * 30) + "\n")
        code = run(["estimate", "--input", p, "--h", "auto"])
        assert code == 4
        capsys.readouterr()

    def test_success_is_0(self, series_csv, tmp_path, capsys):
        out = tmp_path / "curve.csv"
        assert run(["estimate", "--input", series_csv, "--h", "0.5",
                    "--grid-n", "21", "--out", out]) == 0
        capsys.readouterr()


class TestEstimate:
    def test_writes_curve_and_manifest(self, series_csv, tmp_path, capsys):
        out = tmp_path / "curve.csv"
        assert run(["estimate", "--input", series_csv, "--kind", "ll",
                    "--h", "0.5", "--grid-n", "51", "--out", out]) == 0
        capsys.readouterr()
        lines = out.read_text().splitlines()
        assert lines[0] == "z,ghat,defined"
        assert len(lines) == 52
        manifest = json.loads((tmp_path / "curve.csv.manifest.json").read_text())
        assert manifest["subcommand"] == "estimate"

    def test_grid_flags(self, series_csv, tmp_path, capsys):
        out = tmp_path / "curve.csv"
        assert run(["estimate", "--input", series_csv, "--h", "0.5",
                    "--grid-min", "-0.5", "--grid-max", "0.5",
                    "--grid-n", "11", "--out", out]) == 0
        capsys.readouterr()
        zs = read_series(out, column="z")
        assert zs[0] == -0.5 and zs[-1] == 0.5 and zs.size == 11

    def test_stdout_when_no_out(self, series_csv, capsys):
        assert run(["estimate", "--input", series_csv, "--h", "0.5",
                    "--grid-n", "5"]) == 0
        captured = capsys.readouterr()
        assert captured.out.startswith("z,ghat,defined")

    def test_manifest_rerun_byte_identical(self, series_csv, tmp_path, capsys):
        out = tmp_path / "curve.csv"
        argv = ["estimate", "--input", str(series_csv), "--h", "0.5",
                "--grid-n", "21", "--out", str(out)]
        assert run(argv) == 0
        first = out.read_bytes()
        manifest = json.loads((tmp_path / "curve.csv.manifest.json").read_text())
        assert run(manifest["argv"]) == 0
        capsys.readouterr()
        assert out.read_bytes() == first


class TestSharpenAndCheng:
    def test_sharpen_adjust_flag_changes_output(self, series_csv, tmp_path, capsys):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert run(["sharpen", "--input", series_csv, "--h", "0.5",
                    "--grid-n", "11", "--out", a]) == 0
        assert run(["sharpen", "--input", series_csv, "--h", "0.5",
                    "--adjust-h", "n45", "--grid-n", "11", "--out", b]) == 0
        capsys.readouterr()
        assert a.read_bytes() != b.read_bytes()

    def test_cheng_runs(self, series_csv, tmp_path, capsys):
        out = tmp_path / "c.csv"
        assert run(["cheng", "--input", series_csv, "--h", "auto",
                    "--m", "5", "--grid-n", "11", "--out", out]) == 0
        capsys.readouterr()
        assert out.read_text().splitlines()[0] == "z,ghat,defined"


class TestArfit:
    def test_prints_summary_and_writes_csv(self, tmp_path, capsys):
        out = tmp_path / "fit.csv"
        assert run(["arfit", "--dataset", "lynx", "--transform", "sqrt",
                    "--order", "2", "--out", out]) == 0
        text = capsys.readouterr().out
        assert "phi_1" in text and "noise variance" in text
        rows = dict(
            line.split(",") for line in out.read_text().splitlines()[1:]
        )
        assert abs(float(rows["phi_1"]) - 1.3140) < 0.01
        assert abs(float(rows["phi_2"]) + 0.7171) < 0.01


class TestSimulate:
    def test_deterministic_output(self, tmp_path, capsys):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for out in (a, b):
            assert run(["simulate", "--g", "xsin", "--n", "50", "--seed", "9",
                        "--out", out]) == 0
        capsys.readouterr()
        assert a.read_bytes() == b.read_bytes()
        assert read_series(a).size == 50

    def test_linear_spec(self, tmp_path, capsys):
        out = tmp_path / "l.csv"
        assert run(["simulate", "--g", "linear:1.0,0.5", "--n", "20",
                    "--sigma", "0.1", "--out", out]) == 0
        capsys.readouterr()


class TestBiasStudy:
    def test_writes_long_csv(self, tmp_path, capsys):
        out = tmp_path / "study.csv"
        assert run(["bias-study", "--preset", "decomp-xsin", "--n", "50",
                    "--replicates", "8", "--grid-n", "11", "--out", out]) == 0
        capsys.readouterr()
        lines = out.read_text().splitlines()
        assert lines[0] == "z,method,bias,mae,b_ghat,err,combination,defined_count"
        methods = {line.split(",")[1] for line in lines[1:]}
        assert methods == {"raw", "sharpened"}
        # sharpened rows carry the decomposition columns
        sharp_rows = [l for l in lines[1:] if l.split(",")[1] == "sharpened"]
        assert all(r.split(",")[4] != "" for r in sharp_rows)

    def test_compare_preset_runs(self, tmp_path, capsys):
        out = tmp_path / "study.csv"
        assert run(["bias-study", "--preset", "compare-xsin", "--n", "50",
                    "--replicates", "5", "--grid-n", "7", "--out", out]) == 0
        capsys.readouterr()
        methods = {line.split(",")[1] for line in out.read_text().splitlines()[1:]}
        assert methods == {"raw", "sharpened", "cheng"}


class TestBootTest:
    def test_direct_mode(self, tmp_path, capsys):
        out = tmp_path / "bands.csv"
        assert run(["boot-test", "--dataset", "earthquakes", "--mode", "direct",
                    "--method", "raw", "--B", "30", "--grid-n", "15",
                    "--h", "3.0", "--out", out]) == 0
        capsys.readouterr()
        lines = out.read_text().splitlines()
        assert lines[0] == "z,observed,lower,upper,outside"
        assert len(lines) == 16

    def test_residual_mode_sqrt(self, tmp_path, capsys):
        out = tmp_path / "bands.csv"
        assert run(["boot-test", "--dataset", "lynx", "--transform", "sqrt",
                    "--mode", "residual", "--order", "2", "--method", "sharp",
                    "--B", "20", "--grid-n", "9", "--h", "3.0", "--out", out]) == 0
        capsys.readouterr()
        assert (tmp_path / "bands.csv.manifest.json").exists()


class TestDatasets:
    def test_list(self, capsys):
        assert run(["datasets"]) == 0
        text = capsys.readouterr().out
        assert "earthquakes: n=100" in text
        assert "lynx: n=114" in text

    def test_export(self, tmp_path, capsys):
        out = tmp_path / "lynx.csv"
        assert run(["datasets", "--name", "lynx", "--out", out]) == 0
        capsys.readouterr()
        vals = read_series(out, column="value")
        assert vals.size == 114


class TestThreadsDeterminism:
    def test_bias_study_threads(self, tmp_path, capsys):
        outs = []
        for t in ("1", "4"):
            out = tmp_path / f"s{t}.csv"
            assert run(["bias-study", "--preset", "decomp-xsin", "--n", "50",
                        "--replicates", "6", "--grid-n", "9", "--seed", "3",
                        "--threads", t, "--out", out]) == 0
            outs.append(out.read_bytes())
        capsys.readouterr()
        assert outs[0] == outs[1]
