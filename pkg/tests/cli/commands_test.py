# commands_test.py
# MIT License 2026
import json
import os

import pytest
from click.testing import CliRunner
from yaml import safe_dump, safe_load

from weedmap.cli.predict import cmd_predict
from weedmap.cli.run import COMPARISON_FILE, cmd_compare, cmd_run
from weedmap.cli.summary import cmd_summary
from weedmap.cli.synth import cmd_synth
from weedmap.config import load_config

COUNTS = ["--count", "Mowing=6", "--count", "Tillage=5", "--count", "ChemicalSpraying=5", "--count", "NoPractice=5"]
RUN_OUTPUTS = ["model.json", "report.json", "report.csv", "report.txt", "confusion.csv", "cv_scores.csv", "manifest.yaml"]
SMALL_GRIDS = {
    "rf": [{"n_trees": 5}],
    "gbt": [{"n_rounds": 3, "max_depth": 2}],
    "knn": [{"k": 1}]
}


def synthesize(out_dir, *args):
    return CliRunner().invoke(cmd_synth, ["-o", str(out_dir), "--seed", "3", "--revisit-days", "10"] + COUNTS + list(args))


@pytest.fixture(scope="module")
def dataset(tmp_path_factory):
    out_dir = tmp_path_factory.mktemp("synthetic")
    result = synthesize(out_dir)
    assert result.exit_code == 0, result.output
    return out_dir


@pytest.fixture(scope="module")
def config_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("config") / "run.yaml"
    path.write_text(safe_dump({"grid": SMALL_GRIDS["rf"], "folds": 2, "undersample_fraction": 0.0, "seed": 5}))
    return str(path)


@pytest.fixture(scope="module")
def trained(dataset, config_file, tmp_path_factory):
    out_dir = tmp_path_factory.mktemp("run")
    args = ["-c", config_file, "--observations", str(dataset / "observations.csv"), "--parcels", str(dataset / "parcels.csv"), "-o", str(out_dir), "--pixel-dataset", str(out_dir / "pixels.csv")]
    result = CliRunner().invoke(cmd_run, args)
    assert result.exit_code == 0, result.output
    return out_dir


def test_synth_needs_an_output_directory():
    result = CliRunner().invoke(cmd_synth, ["--seed", "1"])
    assert result.exit_code == 2


def test_synth_is_reproducible(dataset, tmp_path):
    assert synthesize(tmp_path).exit_code == 0
    for name in ("observations.csv", "parcels.csv"):
        assert (tmp_path / name).read_bytes() == (dataset / name).read_bytes()
    assert (tmp_path / "observations.csv").read_text().startswith("# scale=10000\npixel_id,parcel_id,date,cloud_fraction,B01,")
    assert len((tmp_path / "parcels.csv").read_text().splitlines()) == 1 + 21


def test_synth_invalid_count(tmp_path):
    result = CliRunner().invoke(cmd_synth, ["-o", str(tmp_path), "--count", "Mowing=many"])
    assert result.exit_code == 2


def test_run_outputs(trained, dataset):
    for name in RUN_OUTPUTS + ["pixels.csv"]:
        assert (trained / name).is_file()
    report = json.loads((trained / "report.json").read_text())
    assert report["metadata"]["model_kind"] == "rf"
    assert report["metadata"]["dataset"] == "observations.csv"
    manifest = safe_load((trained / "manifest.yaml").read_text())
    assert manifest["sensor"] == "S2"
    assert manifest["grid"] == SMALL_GRIDS["rf"]
    assert manifest["run"]["n_features"] == 3 * 518
    assert manifest["run"]["test_size"] == 4
    assert "numpy" in manifest["run"]["versions"]
    cfg = load_config(str(trained / "manifest.yaml"))
    assert cfg.seed == 5


def test_run_reproduced_from_manifest(trained, tmp_path):
    result = CliRunner().invoke(cmd_run, ["-c", str(trained / "manifest.yaml"), "-o", str(tmp_path)])
    assert result.exit_code == 0, result.output
    assert (tmp_path / "model.json").read_bytes() == (trained / "model.json").read_bytes()
    assert (tmp_path / "report.json").read_bytes() == (trained / "report.json").read_bytes()
    assert (tmp_path / "report.csv").read_bytes() == (trained / "report.csv").read_bytes()


def test_run_class_too_small(tmp_path):
    data_dir = tmp_path / "data"
    result = CliRunner().invoke(cmd_synth, ["-o", str(data_dir), "--revisit-days", "10", "--count", "Mowing=6", "--count", "Tillage=1"])
    assert result.exit_code == 0, result.output
    args = ["--observations", str(data_dir / "observations.csv"), "--parcels", str(data_dir / "parcels.csv"), "-o", str(tmp_path / "out")]
    assert CliRunner().invoke(cmd_run, args).exit_code == 4


def test_run_without_inputs(tmp_path):
    assert CliRunner().invoke(cmd_run, ["-o", str(tmp_path)]).exit_code == 2


def test_run_invalid_option(dataset, tmp_path):
    args = ["--observations", str(dataset / "observations.csv"), "--parcels", str(dataset / "parcels.csv"), "-o", str(tmp_path), "--test-fraction", "1.5"]
    assert CliRunner().invoke(cmd_run, args).exit_code == 2


def test_predict(trained, dataset, tmp_path):
    output = tmp_path / "predictions.csv"
    result = CliRunner().invoke(cmd_predict, [str(trained / "model.json"), str(dataset / "observations.csv"), str(dataset / "parcels.csv"), "-o", str(output)])
    assert result.exit_code == 0, result.output
    lines = output.read_text().splitlines()
    assert lines[0] == "parcel_id,predicted_class"
    assert len(lines) == 1 + 21


def test_predict_empty_manifest(trained, dataset, tmp_path):
    manifest = tmp_path / "parcels.csv"
    manifest.write_text("parcel_id,orchard_type,label\n")
    output = tmp_path / "predictions.csv"
    result = CliRunner().invoke(cmd_predict, [str(trained / "model.json"), str(dataset / "observations.csv"), str(manifest), "-o", str(output)])
    assert result.exit_code == 0, result.output
    assert output.read_text() == "parcel_id,predicted_class\n"


def test_predict_other_sensor(trained, tmp_path):
    assert synthesize(tmp_path, "--sensor", "PS8B").exit_code == 0
    args = [str(trained / "model.json"), str(tmp_path / "observations.csv"), str(tmp_path / "parcels.csv"), "-o", str(tmp_path / "predictions.csv")]
    assert CliRunner().invoke(cmd_predict, args).exit_code == 3


def test_summary(dataset, tmp_path):
    result = CliRunner().invoke(cmd_summary, [str(dataset / "parcels.csv")])
    assert result.exit_code == 0
    assert "Total" in result.output
    output = tmp_path / "summary.csv"
    result = CliRunner().invoke(cmd_summary, [str(dataset / "parcels.csv"), "-f", "csv", "-o", str(output)])
    assert result.exit_code == 0
    lines = output.read_text().splitlines()
    assert lines[0] == "orchard_type,Mowing,Tillage,ChemicalSpraying,NoPractice,total"
    assert lines[-1] == "Total,6,5,5,5,21"


def test_compare(dataset, config_file, tmp_path, monkeypatch):
    monkeypatch.setattr("weedmap.pipeline.default_grid", lambda kind: [dict(hp) for hp in SMALL_GRIDS[kind]])
    args = ["-c", config_file, "--observations", str(dataset / "observations.csv"), "--parcels", str(dataset / "parcels.csv"), "-o", str(tmp_path)]
    result = CliRunner().invoke(cmd_compare, args)
    assert result.exit_code == 0, result.output
    for kind in SMALL_GRIDS:
        assert all(os.path.isfile(tmp_path / kind / name) for name in RUN_OUTPUTS)
    table = (tmp_path / COMPARISON_FILE).read_text()
    assert "RF" in table and "GBT" in table and "KNN" in table
    manifest = safe_load((tmp_path / "gbt" / "manifest.yaml").read_text())
    assert manifest["model"] == "gbt"
    assert manifest["grid"] == SMALL_GRIDS["gbt"]
