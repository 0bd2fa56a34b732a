# run.py
# MIT License 2026
import logging
import os
from typing import Any, Callable, Dict, List, Sequence, Tuple

import click
import joblib
import numpy as np
import pandas as pd
from yaml import safe_dump

import weedmap
from weedmap.cli.utils import (exit_on_error, install_logger,
                               log_level_option, prepare_out_dir, to_date,
                               write_text)
from weedmap.config import RUN_SECTION, RunConfig, load_config
from weedmap.core.records import ParcelRecord, SpectralObservation
from weedmap.core.sensors import SensorId
from weedmap.eval.report import render_comparison, render_confusion_csv, render_report
from weedmap.exceptions import ConfigError
from weedmap.features.pixel import write_pixel_dataset
from weedmap.io.observations import read_observations, read_parcels
from weedmap.learn.registry import load_learners
from weedmap.learn.serialization import save_model
from weedmap.learn.split import SPLIT_KEYS
from weedmap.pipeline import (ExperimentResult, Preprocessing,
                              featurize_pixels, prepare_split,
                              run_experiment, train_and_evaluate)

COMPARED_MODELS = ("rf", "gbt", "knn")
COMPARISON_FILE = "comparison.txt"

logger = logging.getLogger(__name__)

RUN_OPTIONS = [
    click.option("-c", "--config", type=click.Path(exists=True, dir_okay=False), default=None, help="YAML configuration file of the run"),
    click.option("--observations", type=click.Path(exists=True, dir_okay=False), default=None, help="Observation file"),
    click.option("--parcels", type=click.Path(exists=True, dir_okay=False), default=None, help="Parcel manifest"),
    click.option("-o", "--out-dir", type=str, default=None, help="Directory where the outputs are written"),
    click.option("--sensor", type=click.Choice([s.value for s in SensorId], case_sensitive=False), default=None, help="Expected sensor [default: detected from the observation file]"),
    click.option("--window-start", type=click.DateTime(formats=["%Y-%m-%d"]), default=None, help="First day of the observation window [default: 2024-05-01]"),
    click.option("--window-end", type=click.DateTime(formats=["%Y-%m-%d"]), default=None, help="Last day of the observation window [default: 2024-08-31]"),
    click.option("--grid-step", type=int, default=None, help="Days between two dates of the time grid [default: 10]"),
    click.option("--cloud-threshold", type=float, default=None, help="Maximum cloud fraction of a retained observation [default: 0.005]"),
    click.option("--test-fraction", type=float, default=None, help="Fraction of every class held out for testing [default: 0.2]"),
    click.option("--undersample-fraction", type=float, default=None, help="Fraction of the majority class removed from training [default: 0.006]"),
    click.option("--folds", type=int, default=None, help="Number of cross-validation folds [default: 5]"),
    click.option("--seed", type=int, default=None, help="Master seed of the run [default: 42]"),
    click.option("--split-key", type=click.Choice(SPLIT_KEYS), default=None, help="How test parcels are drawn [default: random]"),
    click.option("--orchard-feature/--no-orchard-feature", default=None, help="Use the orchard type as a feature [default: no]"),
    click.option("--drop-band", "drop_bands", type=str, multiple=True, help="Band code excluded from the features (repeatable)"),
    click.option("-j", "--n-jobs", type=int, default=None, help="Number of parallel jobs, -1 for all cores [default: 1]"),
    log_level_option
]


def run_options(command: Callable) -> Callable:
    """Decorate a command with the options shared by every training command"""
    for option in reversed(RUN_OPTIONS):
        command = option(command)
    return command


def collect_overrides(options: Dict[str, Any]) -> Dict[str, Any]:
    """Map command-line options onto configuration keys, leaving out the ones not given"""
    overrides = {key: value for key, value in options.items() if key not in ("config", "log_level", "pixel_dataset", "window_start", "window_end", "drop_bands")}
    overrides["window_start"] = to_date(options.get("window_start"))
    overrides["window_end"] = to_date(options.get("window_end"))
    if len(options.get("drop_bands", ())) > 0:
        overrides["drop_bands"] = list(options["drop_bands"])
    return overrides


def read_inputs(cfg: RunConfig) -> Tuple[RunConfig, List[SpectralObservation], List[ParcelRecord]]:
    """Read the observations and the parcels of a run.

    When the configuration names no sensor, the sensor detected in the observation file is
    recorded in the returned configuration.

    Throws: `ConfigError` if an input path is missing, or any error raised while reading the inputs.
    """
    for key in ("observations", "parcels"):
        path = getattr(cfg, key)
        if path is None:
            raise ConfigError(f"The run needs an input file for '{key}'")
        if not os.path.isfile(path):
            raise ConfigError(f"Input file {path} does not exist")
    sensor, observations = read_observations(cfg.observations, cfg.sensor)
    if cfg.sensor is None:
        cfg = cfg.copy(update={"sensor": sensor.id})
    parcels = read_parcels(cfg.parcels, observations)
    return cfg, observations, parcels


def run_manifest(cfg: RunConfig, result: ExperimentResult, grid: Sequence[Dict[str, Any]]) -> Dict[str, Any]:
    """Describe a run: its configuration, plus the schema, model and package versions it produced"""
    document = cfg.to_document()
    document["model"] = result.model.model_kind
    document["grid"] = [dict(hp) for hp in grid]
    document[RUN_SECTION] = {
        "schema_fingerprint": result.model.fingerprint,
        "n_features": len(result.model.schema),
        "best_hyperparams": dict(result.model.hyperparams),
        "train_size": result.train_size,
        "test_size": result.test_size,
        "weighted_f1": result.report.weighted_f1,
        "versions": {
            "weedmap": weedmap.__version__,
            "numpy": np.__version__,
            "pandas": pd.__version__,
            "joblib": joblib.__version__
        }
    }
    return document


def write_outputs(out_dir: str, cfg: RunConfig, result: ExperimentResult) -> None:
    """Write the model, the reports, the cross-validation scores and the manifest of a run"""
    save_model(result.model, os.path.join(out_dir, "model.json"))
    for fmt in ("json", "csv"):
        write_text(os.path.join(out_dir, f"report.{fmt}"), render_report(result.report, fmt))
    write_text(os.path.join(out_dir, "report.txt"), render_report(result.report, "text"))
    write_text(os.path.join(out_dir, "confusion.csv"), render_confusion_csv(result.report.confusion))
    write_text(os.path.join(out_dir, "cv_scores.csv"), result.cross_validation.to_frame().to_csv(index=False, lineterminator="\n"))
    grid = [c.hyperparams for c in result.cross_validation.candidates]
    manifest = safe_dump(run_manifest(cfg, result, grid), sort_keys=True, default_flow_style=False)
    write_text(os.path.join(out_dir, "manifest.yaml"), manifest)


@click.command()
@run_options
@click.option("-m", "--model", type=str, default=None, help="Kind of the learner: rf, gbt, knn or a custom learner [default: rf]")
@click.option("--pixel-dataset", type=str, default=None, help="Also write the pixel-based dataset (one row per pixel) to this CSV file")
@exit_on_error
def cmd_run(**options):
    """Train a weed management classifier on labeled parcels and evaluate it on held-out parcels.

    Runs the whole pipeline: cloud filtering, interpolation, feature engineering, parcel
    aggregation, stratified split, undersampling, cross-validated tuning, final training and
    evaluation on the test set.
    """
    install_logger(options["log_level"])
    cfg = load_config(options["config"], collect_overrides(options))
    cfg, observations, parcels = read_inputs(cfg)
    out_dir = prepare_out_dir(cfg.out_dir)
    if options["pixel_dataset"] is not None:
        pixels = featurize_pixels(observations, Preprocessing.from_config(cfg))
        write_pixel_dataset(options["pixel_dataset"], list(pixels.values()), parcels)
    result = run_experiment(cfg, observations, parcels, os.path.basename(cfg.observations))
    write_outputs(out_dir, cfg, result)
    logger.info(f"Run completed: test weighted F1 of {result.model.model_kind} is {result.report.weighted_f1:.4f}")


@click.command()
@run_options
@exit_on_error
def cmd_compare(**options):
    """Compare the random forest, gradient boosting and KNN learners on one shared split.

    Every learner is tuned on its default grid (or on the configured grid, for the configured model)
    and its outputs are written to a subdirectory named after it, next to a comparison table.
    """
    install_logger(options["log_level"])
    cfg = load_config(options["config"], collect_overrides(options))
    cfg, observations, parcels = read_inputs(cfg)
    out_dir = prepare_out_dir(cfg.out_dir)
    train, test = prepare_split(cfg, observations, parcels)
    learners = load_learners(cfg.learners)
    dataset_id = os.path.basename(cfg.observations)
    reports = dict()
    for kind in COMPARED_MODELS:
        grid = cfg.grid if kind == cfg.model else None
        result = train_and_evaluate(cfg, kind, train, test, grid, dataset_id, learners)
        model_dir = prepare_out_dir(os.path.join(out_dir, kind))
        write_outputs(model_dir, cfg.copy(update={"model": kind, "grid": grid}), result)
        reports[kind] = result.report
    write_text(os.path.join(out_dir, COMPARISON_FILE), render_comparison(reports))
