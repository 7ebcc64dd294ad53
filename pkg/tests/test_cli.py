"""Dataset parsing, artifact writing, exit codes and reproducibility."""

import json

import numpy as np
import pytest

from lomaxbayes import LomaxParams, sample, summarize
from lomaxbayes.cli import (
    EXIT_DATA,
    EXIT_NUMERIC,
    EXIT_OK,
    EXIT_USAGE,
    DataFormatError,
    build_parser,
    main,
    parse_dataset,
)


def _write(tmp_path, text, name="data.txt"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def _make_data_file(tmp_path, n=30, seed=5):
    d = sample(LomaxParams(2.0, 1.5), np.random.default_rng(seed), n)
    return _write(tmp_path, "\n".join(repr(v) for v in d.x.tolist()) + "\n")


FIT_FLAGS = ["--iters", "600", "--burnin", "100", "--thin", "5", "--chains", "2", "--seed", "7"]


class TestParseDataset:
    def test_plain_lines_with_comment_and_blank(self, tmp_path):
        d = parse_dataset(_write(tmp_path, "1.5\n2.0\n# c\n\n3.0\n"))
        assert d.n == 3
        np.testing.assert_array_equal(d.x, [1.5, 2.0, 3.0])

    def test_csv_header_skipped(self, tmp_path):
        d = parse_dataset(_write(tmp_path, "size\n10\n20\n"))
        np.testing.assert_array_equal(d.x, [10.0, 20.0])

    def test_trailing_comma_single_column(self, tmp_path):
        d = parse_dataset(_write(tmp_path, "10,\n20,\n"))
        np.testing.assert_array_equal(d.x, [10.0, 20.0])

    def test_negative_value_names_line(self, tmp_path):
        with pytest.raises(DataFormatError, match="line 2"):
            parse_dataset(_write(tmp_path, "10\n-1\n"))

    def test_unparsable_token_names_line(self, tmp_path):
        with pytest.raises(DataFormatError, match="line 3"):
            parse_dataset(_write(tmp_path, "1\n2\nxyz\n"))

    def test_two_columns_rejected(self, tmp_path):
        with pytest.raises(DataFormatError, match="line 1"):
            parse_dataset(_write(tmp_path, "1,2\n"))

    def test_empty_dataset(self, tmp_path):
        with pytest.raises(DataFormatError, match="empty"):
            parse_dataset(_write(tmp_path, "# only a comment\n"))


class TestParserDefaults:
    def test_fit_defaults_match_application_protocol(self):
        args = build_parser().parse_args(["fit", "x.txt"])
        assert (args.iters, args.burnin, args.thin, args.chains) == (80000, 20000, 20, 2)
        assert args.tuning == 1.0
        assert args.prior == "reference"

    def test_simulate_defaults_match_study_design(self):
        args = build_parser().parse_args(["simulate"])
        assert args.sizes == [50, 100, 150, 200, 300, 500]
        assert (args.beta, args.alpha) == (2.0, 1.5)
        assert args.replications == 500
        assert (args.iters, args.burnin, args.thin) == (11000, 1000, 10)
        assert args.prior is None  # both jeffreys and reference by default

    def test_outdir_env_default(self, tmp_path, monkeypatch):
        monkeypatch.setenv("LOMAXBAYES_OUTDIR", str(tmp_path))
        args = build_parser().parse_args(["fit", "x.txt"])
        assert args.out == str(tmp_path)


class TestFitCommand:
    def test_artifacts_and_round_trip(self, tmp_path):
        data = _make_data_file(tmp_path)
        out = tmp_path / "out"
        code = main(["fit", data, "--prior", "reference", "--out", str(out)] + FIT_FLAGS)
        assert code == EXIT_OK

        summary = json.loads((out / "summary.json").read_text())
        assert summary["prior"] == "reference"
        assert summary["n"] == 30
        assert summary["seed"] == 7
        assert set(summary["alpha"]) == {"mean", "sd", "ci_low", "ci_high"}
        assert summary["psrf"]["alpha"] is not None

        trace = (out / "trace.csv").read_text().splitlines()
        assert trace[0] == "chain,draw_index,alpha,beta"
        assert len(trace) == 1 + 2 * 100  # chains x retained

        # summary statistics must match the emitted trace to printed precision
        alphas = np.array([float(r.split(",")[2]) for r in trace[1:]])
        stats = summarize(alphas)
        assert float(f"{stats.mean:.6g}") == summary["alpha"]["mean"]
        assert float(f"{stats.sd:.6g}") == summary["alpha"]["sd"]
        assert float(f"{stats.ci_low:.6g}") == summary["alpha"]["ci_low"]

        outliers = (out / "outliers.csv").read_text().splitlines()
        assert outliers[0] == "index,x,lambda_mean,flagged"
        assert len(outliers) == 1 + 30
        assert outliers[1].split(",")[3] in {"true", "false"}

    def test_byte_identical_reruns(self, tmp_path):
        data = _make_data_file(tmp_path)
        out1, out2 = tmp_path / "a", tmp_path / "b"
        for out in (out1, out2):
            assert main(["fit", data, "--out", str(out)] + FIT_FLAGS) == EXIT_OK
        for name in ("summary.json", "trace.csv", "outliers.csv"):
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes()

    def test_propriety_violation_exits_3(self, tmp_path, capsys):
        data = _write(tmp_path, "5.0\n")
        code = main(["fit", data, "--prior", "reference", "--out", str(tmp_path)] + FIT_FLAGS)
        assert code == EXIT_NUMERIC
        assert "improper posterior" in capsys.readouterr().err

    def test_dependent_jeffreys_accepts_single_observation(self, tmp_path):
        data = _write(tmp_path, "5.0\n")
        out = tmp_path / "single"
        code = main(["fit", data, "--prior", "jeffreys", "--out", str(out)] + FIT_FLAGS)
        assert code == EXIT_OK
        assert (out / "summary.json").exists()

    def test_bad_data_exits_2(self, tmp_path):
        data = _write(tmp_path, "1.0\n-3.0\n")
        assert main(["fit", data, "--out", str(tmp_path)] + FIT_FLAGS) == EXIT_DATA

    def test_missing_file_exits_2(self, tmp_path):
        missing = str(tmp_path / "nope.txt")
        assert main(["fit", missing, "--out", str(tmp_path)] + FIT_FLAGS) == EXIT_DATA

    def test_usage_error_exits_1(self, tmp_path):
        data = _make_data_file(tmp_path)
        assert main(["fit", data, "--prior", "flat"]) == EXIT_USAGE
        assert main([]) == EXIT_USAGE
        # invalid run configuration (burn-in beyond iterations)
        assert main(["fit", data, "--iters", "10", "--burnin", "100"]) == EXIT_USAGE


SIM_FLAGS = [
    "--replications", "2", "--sizes", "6", "--prior", "reference", "--quiet",
    "--iters", "300", "--burnin", "100", "--thin", "2", "--chains", "2", "--seed", "3",
]


class TestSimulateCommand:
    def test_single_cell_report(self, tmp_path, capsys):
        out = tmp_path / "sim"
        assert main(["simulate", "--out", str(out)] + SIM_FLAGS) == EXIT_OK
        lines = (out / "simulation.csv").read_text().splitlines()
        assert lines[0].startswith("prior,n,parameter")
        assert len(lines) == 1 + 2  # one (prior, n) cell, two parameters
        assert "rmse" in capsys.readouterr().out

    def test_byte_identical_reruns(self, tmp_path):
        out1, out2 = tmp_path / "s1", tmp_path / "s2"
        for out in (out1, out2):
            assert main(["simulate", "--out", str(out)] + SIM_FLAGS) == EXIT_OK
        assert (out1 / "simulation.csv").read_bytes() == (out2 / "simulation.csv").read_bytes()
