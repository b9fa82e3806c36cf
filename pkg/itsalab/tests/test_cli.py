# -----------------------------------------------------------------------------.
# MIT License

# Copyright (c) 2026 itsalab developers
#
# This file is part of itsalab.

# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.

# -----------------------------------------------------------------------------.
"""Test the command-line interface."""
import os

import pandas as pd
import pytest

from itsalab.cli.main import EXIT_ESTIMATION_ERROR, EXIT_INPUT_ERROR, EXIT_OK, main
from itsalab.dgp.panel_io import read_panel_csv, read_panel_metadata
from itsalab.errors import RankDeficientError
from itsalab.simulate.results import RESULT_COLUMNS
from itsalab.utils.json import dict_hash, read_json
from itsalab.utils.rng import RNG_NAME
from itsalab.utils.yaml import write_yaml


@pytest.fixture
def panel_file(tmp_path):
    filepath = str(tmp_path / "panel.csv")
    assert main(["dgp", "--example", "prediabetes", "--ar", "2", "--out", filepath]) == EXIT_OK
    return filepath


class TestDgp:
    def test_example(self, panel_file):
        panel = read_panel_csv(panel_file)
        assert len(panel) == 5 * 360
        metadata = read_panel_metadata(panel_file)
        assert metadata["seed"] == 77777
        assert metadata["intervention"] == 181
        assert metadata["rho"] == [0.7, 0.2]
        assert metadata["betas"][7] == pytest.approx(-0.08)
        assert metadata["rng"] == RNG_NAME
        assert "itsalab_version" in metadata
        assert len(metadata["config_hash"]) == 64

    def test_reproducible(self, panel_file, tmp_path):
        filepath = str(tmp_path / "again.csv")
        assert main(["dgp", "--example", "prediabetes", "--ar", "2", "--out", filepath]) == EXIT_OK
        with open(panel_file, "rb") as f1, open(filepath, "rb") as f2:
            assert f1.read() == f2.read()

    def test_seed(self, panel_file, tmp_path):
        filepath = str(tmp_path / "seed.csv")
        assert main(["dgp", "--example", "prediabetes", "--ar", "2", "--seed", "5", "--out", filepath]) == EXIT_OK
        assert read_panel_metadata(filepath)["seed"] == 5
        assert read_panel_metadata(filepath)["config_hash"] != read_panel_metadata(panel_file)["config_hash"]
        assert not read_panel_csv(filepath)["y"].equals(read_panel_csv(panel_file)["y"])

    def test_config_file(self, tmp_path):
        config_filepath = str(tmp_path / "config.yaml")
        write_yaml({"scenario": {"n_periods": 12, "n_controls": 2, "seed": 3}}, config_filepath)
        filepath = str(tmp_path / "panel.csv")
        assert main(["dgp", config_filepath, "--out", filepath]) == EXIT_OK
        assert len(read_panel_csv(filepath)) == 36

    def test_no_overwrite(self, panel_file):
        assert main(["dgp", "--example", "prediabetes", "--out", panel_file]) == EXIT_INPUT_ERROR
        assert main(["dgp", "--example", "prediabetes", "--out", panel_file, "--force"]) == EXIT_OK

    @pytest.mark.parametrize(
        "argv",
        [
            ["dgp", "prediabetes", "--example", "prediabetes"],
            ["dgp"],
            ["dgp", "--example", "prediabetes", "--ar", "4"],
            ["dgp", "smoke"],
            ["dgp", "missing.yaml"],
        ],
    )
    def test_invalid_input(self, tmp_path, argv):
        assert main([*argv, "--out", str(tmp_path / "panel.csv")]) == EXIT_INPUT_ERROR


class TestFit:
    def test_both_methods(self, panel_file, tmp_path, capsys):
        report_filepath = str(tmp_path / "report.json")
        assert main(["fit", panel_file, "--ar-order", "2", "--out", report_filepath]) == EXIT_OK
        out = capsys.readouterr().out
        assert "OLS with Newey-West standard errors" in out
        assert "Prais-Winsten FGLS" in out
        assert "_z_x_t" in out
        assert "rho_2" in out
        report = read_json(report_filepath)
        assert report["intervention"] == 181
        assert [fit["method"] for fit in report["fits"]] == ["OLS_NW", "PW"]
        assert report["fits"][0]["lag_used"] == 5
        assert len(report["fits"][1]["rho_hat"]) == 2
        assert set(report["fits"][1]["did_trend"]) == {"method", "estimate", "se", "ci_low", "ci_high", "p_value"}
        assert report["seed"] == 77777
        assert report["rng"] == RNG_NAME
        assert "itsalab_version" in report
        assert report["config_hash"] == dict_hash(report["settings"])
        assert report["settings"]["ar_order"] == 2

    def test_report_without_panel_metadata(self, panel_file, tmp_path):
        filepath = str(tmp_path / "plain.csv")
        read_panel_csv(panel_file).to_csv(filepath, index=False)
        report_filepath = str(tmp_path / "report.json")
        assert main(["fit", filepath, "--method", "olsnw", "--out", report_filepath]) == EXIT_OK
        report = read_json(report_filepath)
        assert report["seed"] is None
        assert report["intervention"] == 181

    def test_single_method(self, panel_file, capsys):
        assert main(["fit", panel_file, "--method", "olsnw", "--lag", "3"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "Newey-West lag: 3" in out
        assert "Prais-Winsten" not in out

    def test_invalid_panel(self, panel_file, tmp_path):
        filepath = str(tmp_path / "broken.csv")
        read_panel_csv(panel_file).drop(index=10).to_csv(filepath, index=False)
        assert main(["fit", filepath]) == EXIT_INPUT_ERROR

    def test_degenerate_intervention(self, panel_file):
        assert main(["fit", panel_file, "--intervention", "1"]) == EXIT_INPUT_ERROR

    def test_estimation_error(self, panel_file):
        assert main(["fit", panel_file, "--method", "olsnw", "--lag", "400"]) == EXIT_ESTIMATION_ERROR

    def test_missing_file(self, tmp_path):
        assert main(["fit", str(tmp_path / "missing.csv")]) == EXIT_INPUT_ERROR


class TestSimulate:
    def test_smoke(self, tmp_path):
        out_dir = str(tmp_path / "smoke")
        argv = ["simulate", "smoke", "--out", out_dir, "--threads", "1", "--replications", "10"]
        assert main(argv) == EXIT_OK
        results = pd.read_csv(os.path.join(out_dir, "results.csv"))
        assert list(results.columns) == RESULT_COLUMNS
        assert results["method"].tolist() == ["OLS_NW", "PW"]
        assert results["replications"].tolist() == [10, 10]
        metadata = read_json(os.path.join(out_dir, "results.json"))
        assert metadata["seed"] == 1
        assert metadata["n_conditions"] == 1
        assert metadata["config"]["grids"][0]["replications"] == 10
        assert len(os.listdir(os.path.join(out_dir, "conditions"))) == 1

        # Existing results are not overwritten
        assert main(argv) == EXIT_INPUT_ERROR

        # Resuming reuses the completed conditions
        with open(os.path.join(out_dir, "results.csv")) as f:
            content = f.read()
        assert main([*argv, "--resume"]) == EXIT_OK
        with open(os.path.join(out_dir, "results.csv")) as f:
            assert f.read() == content

    def test_environment_threads(self, tmp_path, monkeypatch):
        monkeypatch.setenv("ITSA_LAB_THREADS", "1")
        assert main(["simulate", "smoke", "--out", str(tmp_path), "--replications", "5"]) == EXIT_OK

    def test_failed_conditions(self, tmp_path, mocker):
        mocker.patch("itsalab.simulate.engine.fit_method", side_effect=RankDeficientError("rank"))
        out_dir = str(tmp_path / "smoke")
        argv = ["simulate", "smoke", "--out", out_dir, "--threads", "1", "--replications", "5"]
        assert main(argv) == EXIT_ESTIMATION_ERROR
        results = pd.read_csv(os.path.join(out_dir, "results.csv"))
        assert results["power"].isna().all()
        assert results["n_failed"].tolist() == [5, 5]
        assert os.path.exists(os.path.join(out_dir, "results.json"))

    def test_config_without_grids(self, tmp_path):
        assert main(["simulate", "prediabetes", "--out", str(tmp_path)]) == EXIT_INPUT_ERROR

    def test_missing_config(self, tmp_path):
        assert main(["simulate", str(tmp_path / "missing.yaml"), "--out", str(tmp_path)]) == EXIT_INPUT_ERROR


class TestExample:
    def test_report(self, capsys):
        assert main(["example", "--ar", "2"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "Applied example: AR[2] errors, rho = [0.7, 0.2], seed 77777" in out
        assert "True effect: -0.08" in out
        assert "SE ratio PW / OLS-NW" in out
        assert "not bit-compatible" in out

    def test_report_file(self, tmp_path, capsys):
        filepath = str(tmp_path / "example.json")
        assert main(["example", "--ar", "1", "--out", filepath]) == EXIT_OK
        metadata = read_json(filepath)
        assert metadata["seed"] == 77777
        assert metadata["rng"] == RNG_NAME
        assert "itsalab_version" in metadata
        assert metadata["config_hash"] == dict_hash(metadata["config"])
        assert metadata["config"]["scenario"]["ar"]["rho"] == [0.7]
        assert [fit["method"] for fit in metadata["fits"]] == ["OLS_NW", "PW"]
        assert main(["example", "--ar", "1", "--out", filepath]) == EXIT_INPUT_ERROR
        assert main(["example", "--ar", "1", "--out", filepath, "--force"]) == EXIT_OK

    def test_invalid_order(self):
        with pytest.raises(SystemExit) as excinfo:
            main(["example", "--ar", "5"])
        assert excinfo.value.code == 2


def test_version(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["--version"])
    assert excinfo.value.code == 0
    assert capsys.readouterr().out.startswith("itsalab ")
