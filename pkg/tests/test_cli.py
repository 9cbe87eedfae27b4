"""Command-line interface: samplesize, gen-synth, simulate, report."""

import json
import subprocess
import sys

import pytest

from alsvm import StrategyId, load_sparse_text
from alsvm.cli import main

from conftest import study_curves, write_study_csvs
from alsvm import curve_to_csv


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSamplesize:
    def test_error_mode_reproduces_the_reference_plan(self, capsys):
        code, out, err = run_cli(capsys, "samplesize", "--population", "5656",
                                 "--confidence", "0.95", "--error", "0.074",
                                 "--prevalence", "0.176")
        assert code == 0
        values = dict(line.split() for line in out.strip().split("\n"))
        assert values["z"] == "1.960000"
        assert abs(int(values["n"]) - 100) <= 2
        assert float(values["achieved_error"]) <= 0.074 + 1e-9

    def test_sample_size_mode_reports_the_error(self, capsys):
        code, out, err = run_cli(capsys, "samplesize", "--population", "5656",
                                 "--z", "1.96", "--prevalence", "0.176",
                                 "--sample-size", "100")
        assert code == 0
        values = dict(line.split() for line in out.strip().split("\n"))
        assert values["z"] == "1.960000"
        assert float(values["sampling_error"]) == pytest.approx(0.0739, abs=5e-4)

    def test_infinite_population_default(self, capsys):
        code, out, _ = run_cli(capsys, "samplesize", "--confidence", "0.95",
                               "--error", "0.05")
        assert code == 0
        values = dict(line.split() for line in out.strip().split("\n"))
        assert values["n"] == "385"
        assert float(values["n0"]) == pytest.approx(384.16, abs=0.005)

    def test_explicit_z_overrides_confidence(self, capsys):
        code, out, _ = run_cli(capsys, "samplesize", "--z", "2.0", "--error", "0.05")
        assert code == 0
        assert out.startswith("z 2.000000")

    def test_requires_one_of_error_or_sample_size(self, capsys):
        code, out, err = run_cli(capsys, "samplesize")
        assert code == 2
        assert "required" in err

    def test_rejects_error_outside_unit_interval(self, capsys):
        code, _, err = run_cli(capsys, "samplesize", "--error", "0")
        assert code == 2
        assert "(0,1)" in err

    def test_rejects_bad_prevalence(self, capsys):
        code, _, err = run_cli(capsys, "samplesize", "--error", "0.05",
                               "--prevalence", "1.5")
        assert code == 1
        assert err.startswith("error:")

    def test_warns_when_normal_approximation_is_thin(self, capsys):
        code, _, err = run_cli(capsys, "samplesize", "--sample-size", "20",
                               "--prevalence", "0.1")
        assert code == 0
        assert "normal approximation" in err

    def test_no_warning_when_both_classes_are_well_represented(self, capsys):
        code, _, err = run_cli(capsys, "samplesize", "--sample-size", "100",
                               "--prevalence", "0.176")
        assert code == 0
        assert err == ""


class TestGenSynth:
    def test_counts_and_summary(self, capsys, tmp_path):
        out_path = tmp_path / "synth.txt"
        code, out, _ = run_cli(capsys, "gen-synth", "--n", "1000",
                               "--positive-fraction", "0.1", "--seed", "0",
                               "--out", str(out_path))
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "positives 100"
        assert lines[1] == "negatives 900"
        assert lines[2] == "prevalence 0.100000"
        assert lines[3] == f"wrote {out_path}"
        ds = load_sparse_text(out_path)
        assert len(ds) == 1000
        assert ds.positive_count == 100

    def test_floor_of_fractional_positives(self, capsys, tmp_path):
        out_path = tmp_path / "synth.txt"
        code, out, _ = run_cli(capsys, "gen-synth", "--n", "5656",
                               "--positive-fraction", "0.1756", "--seed", "1",
                               "--out", str(out_path))
        assert code == 0
        assert out.startswith("positives 993\n")

    def test_deterministic_bytes(self, capsys, tmp_path):
        paths = [tmp_path / "a.txt", tmp_path / "b.txt"]
        for path in paths:
            run_cli(capsys, "gen-synth", "--n", "300", "--positive-fraction", "0.2",
                    "--seed", "7", "--out", str(path))
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_rejects_bad_fraction(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "gen-synth", "--n", "100",
                               "--positive-fraction", "1.5",
                               "--out", str(tmp_path / "x.txt"))
        assert code == 1
        assert err.startswith("error:")


@pytest.fixture(scope="module")
def tiny_dataset(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "tiny.txt"
    code = main(["gen-synth", "--n", "200", "--positive-fraction", "0.25",
                 "--overlap", "0.3", "--dim", "4", "--seed", "1",
                 "--out", str(path)])
    assert code == 0
    return path


def simulate_args(data_path, out_dir, *extra):
    return ["simulate", "--data", str(data_path), "--folds", "2",
            "--strategy", "random-pa", "--strategy", "closest-pa",
            "--init", "40", "--batch", "30", "--budget", "100",
            "--seed", "5", "--out", str(out_dir), *extra]


class TestSimulate:
    def test_writes_manifest_and_curves(self, capsys, tiny_dataset, tmp_path):
        out_dir = tmp_path / "run"
        code, out, _ = run_cli(capsys, *simulate_args(tiny_dataset, out_dir))
        assert code == 0
        manifest = json.loads((out_dir / "manifest.json").read_text())
        expected = sorted(f"{s}_fold{i}.csv"
                          for s in ("random-pa", "closest-pa") for i in (0, 1))
        assert manifest["artifacts"] == expected
        assert manifest["config"]["seed"] == 5
        assert manifest["config"]["strategies"] == ["random-pa", "closest-pa"]
        assert manifest["data"]["sha256"]
        for name in expected:
            assert (out_dir / name).is_file()
        wrote = [line for line in out.strip().split("\n") if line.startswith("wrote ")]
        assert len(wrote) == 5  # four curves plus the manifest

    def test_curves_have_the_requested_grid(self, capsys, tiny_dataset, tmp_path):
        from alsvm import read_curves_csv
        out_dir = tmp_path / "run"
        run_cli(capsys, *simulate_args(tiny_dataset, out_dir))
        curve = read_curves_csv(out_dir / "closest-pa_fold0.csv")[0]
        assert curve.unit == "fold0"
        assert [p.num_labeled for p in curve.points] == [40, 70, 100]

    def test_rerun_is_byte_identical(self, capsys, tiny_dataset, tmp_path):
        dirs = [tmp_path / "a", tmp_path / "b"]
        for d in dirs:
            run_cli(capsys, *simulate_args(tiny_dataset, d))
        for name in ("random-pa_fold0.csv", "random-pa_fold1.csv",
                     "closest-pa_fold0.csv", "closest-pa_fold1.csv",
                     "manifest.json"):
            assert (dirs[0] / name).read_bytes() == (dirs[1] / name).read_bytes()

    def test_worker_count_does_not_change_results(self, capsys, tiny_dataset, tmp_path):
        dirs = [tmp_path / "w1", tmp_path / "w3"]
        run_cli(capsys, *simulate_args(tiny_dataset, dirs[0], "--workers", "1"))
        run_cli(capsys, *simulate_args(tiny_dataset, dirs[1], "--workers", "3"))
        for name in ("random-pa_fold0.csv", "closest-pa_fold1.csv"):
            assert (dirs[0] / name).read_bytes() == (dirs[1] / name).read_bytes()

    def test_from_manifest_reproduces_the_run(self, capsys, tiny_dataset, tmp_path):
        first = tmp_path / "first"
        run_cli(capsys, *simulate_args(tiny_dataset, first))
        second = tmp_path / "second"
        second.mkdir()
        manifest = json.loads((first / "manifest.json").read_text())
        (second / "manifest.json").write_text(json.dumps(manifest, indent=2,
                                                         sort_keys=True) + "\n")
        code, _, _ = run_cli(capsys, "simulate", "--from-manifest",
                             str(second / "manifest.json"))
        assert code == 0
        for name in manifest["artifacts"]:
            assert (first / name).read_bytes() == (second / name).read_bytes()

    def test_from_manifest_detects_modified_data(self, capsys, tiny_dataset, tmp_path):
        first = tmp_path / "first"
        run_cli(capsys, *simulate_args(tiny_dataset, first))
        manifest = json.loads((first / "manifest.json").read_text())
        copy = tmp_path / "copy.txt"
        copy.write_text(tiny_dataset.read_text() + "# trailing comment\n")
        manifest["data"]["path"] = str(copy)
        (first / "manifest.json").write_text(json.dumps(manifest) + "\n")
        code, _, err = run_cli(capsys, "simulate", "--from-manifest",
                               str(first / "manifest.json"))
        assert code == 1
        assert "fingerprint" in err

    def test_env_seed_overrides_flag(self, capsys, tiny_dataset, tmp_path, monkeypatch):
        base = tmp_path / "base"
        run_cli(capsys, *simulate_args(tiny_dataset, base))
        monkeypatch.setenv("ALSVM_MASTER_SEED", "99")
        other = tmp_path / "other"
        run_cli(capsys, *simulate_args(tiny_dataset, other))
        manifest = json.loads((other / "manifest.json").read_text())
        assert manifest["config"]["seed"] == 99
        assert ((base / "random-pa_fold0.csv").read_bytes()
                != (other / "random-pa_fold0.csv").read_bytes())

    def test_requires_exactly_one_evaluation_source(self, capsys, tiny_dataset, tmp_path):
        code, _, err = run_cli(capsys, "simulate", "--data", str(tiny_dataset),
                               "--strategy", "random-pa",
                               "--out", str(tmp_path / "x"))
        assert code == 1
        assert "--folds or --test" in err

    def test_requires_a_strategy(self, capsys, tiny_dataset, tmp_path):
        code, _, err = run_cli(capsys, "simulate", "--data", str(tiny_dataset),
                               "--folds", "2", "--out", str(tmp_path / "x"))
        assert code == 1
        assert "--strategy" in err

    def test_heldout_test_file_uses_the_train_unit(self, capsys, tmp_path):
        train_path = tmp_path / "train.txt"
        test_path = tmp_path / "test.txt"
        main(["gen-synth", "--n", "150", "--positive-fraction", "0.3", "--dim", "4",
              "--seed", "2", "--out", str(train_path)])
        main(["gen-synth", "--n", "80", "--positive-fraction", "0.3", "--dim", "4",
              "--seed", "3", "--out", str(test_path)])
        out_dir = tmp_path / "run"
        code, _, _ = run_cli(capsys, "simulate", "--data", str(train_path),
                             "--test", str(test_path), "--strategy", "closest-nopa",
                             "--init", "50", "--batch", "50", "--budget", "150",
                             "--seed", "4", "--out", str(out_dir))
        assert code == 0
        assert (out_dir / "closest-nopa_train.csv").is_file()

    def test_unknown_strategy_is_an_argparse_error(self, capsys, tiny_dataset, tmp_path):
        with pytest.raises(SystemExit) as excinfo:
            main(["simulate", "--data", str(tiny_dataset), "--folds", "2",
                  "--strategy", "entropy-pa", "--out", str(tmp_path / "x")])
        assert excinfo.value.code == 2


class TestReport:
    def test_reference_study_report(self, capsys, tmp_path):
        curves_dir = tmp_path / "curves"
        write_study_csvs(curves_dir)
        (curves_dir / "notes.csv").write_text("a,b\n1,2\n")  # not a curve file
        (curves_dir / "manifest.json").write_text("{}\n")
        code, out, err = run_cli(capsys, "report", "--curves", str(curves_dir))
        assert code == 0
        assert err == ""
        for name in ("utilization.csv", "ttests.csv", "plateaus.csv"):
            assert f"wrote {curves_dir / name}" in out
        lines = (curves_dir / "utilization.csv").read_text().strip().split("\n")
        header = lines[0].split(",")
        average = dict(zip(header, lines[-1].split(",")))
        assert average["baseline_count"] == "3104"
        assert average["qbag-pa_count"] == "2062"
        assert average["qboost-pa_count"] == "1952"
        assert average["closest-pa_count"] == "1608"
        assert round(float(average["qbag-pa_ratio"]), 2) == 0.83
        assert round(float(average["qboost-pa_ratio"]), 2) == 0.93
        assert round(float(average["closest-pa_ratio"]), 2) == 0.56
        ttests = (curves_dir / "ttests.csv").read_text().strip().split("\n")
        assert len(ttests) == 1 + 6  # header, three learners x two variants
        significant = {}
        for line in ttests[1:]:
            fields = line.split(",")
            significant[(fields[0], fields[2])] = fields[-1]
        # The closest-to-boundary learner is significant both ways; the
        # committee learners have two expensive folds each, which blows
        # up the ratio variance.
        assert significant == {
            ("qbag-pa", "counts"): "true",
            ("qbag-pa", "ratios"): "false",
            ("qboost-pa", "counts"): "false",
            ("qboost-pa", "ratios"): "false",
            ("closest-pa", "counts"): "true",
            ("closest-pa", "ratios"): "true",
        }

    def test_separate_out_directory(self, capsys, tmp_path):
        curves_dir = tmp_path / "curves"
        out_dir = tmp_path / "summary"
        write_study_csvs(curves_dir)
        code, out, _ = run_cli(capsys, "report", "--curves", str(curves_dir),
                               "--out", str(out_dir))
        assert code == 0
        assert (out_dir / "utilization.csv").is_file()
        assert not (curves_dir / "utilization.csv").exists()

    def test_single_unit_skips_ttests_with_warning(self, capsys, tmp_path):
        curves_dir = tmp_path / "curves"
        curves_dir.mkdir()
        fold0 = [c for c in study_curves() if c.unit == "fold0"]
        for curve in fold0:
            (curves_dir / f"{curve.strategy.value}.csv").write_text(curve_to_csv(curve))
        code, _, err = run_cli(capsys, "report", "--curves", str(curves_dir))
        assert code == 0
        assert "skipping t-tests" in err
        ttests = (curves_dir / "ttests.csv").read_text().strip().split("\n")
        assert len(ttests) == 1  # header only

    def test_missing_directory(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "report", "--curves", str(tmp_path / "nope"))
        assert code == 1
        assert err.startswith("error:")

    def test_directory_without_curves(self, capsys, tmp_path):
        curves_dir = tmp_path / "curves"
        curves_dir.mkdir()
        (curves_dir / "notes.csv").write_text("a,b\n1,2\n")
        code, _, err = run_cli(capsys, "report", "--curves", str(curves_dir))
        assert code == 1
        assert "no learning-curve" in err

    def test_unknown_baseline_is_an_argparse_error(self, capsys, tmp_path):
        with pytest.raises(SystemExit) as excinfo:
            main(["report", "--curves", str(tmp_path), "--baseline", "margin-pa"])
        assert excinfo.value.code == 2


class TestEntryPoint:
    def test_console_script_runs(self):
        proc = subprocess.run([sys.executable, "-m", "alsvm.cli", "--version"],
                              capture_output=True, text=True)
        assert proc.returncode == 0
        assert proc.stdout.startswith("alsvm ")

    def test_installed_script(self):
        proc = subprocess.run(["alsvm", "samplesize", "--error", "0.05"],
                              capture_output=True, text=True)
        assert proc.returncode == 0
        assert "n 385" in proc.stdout
