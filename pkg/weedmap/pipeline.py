# pipeline.py
# MIT License 2026
import logging
from dataclasses import dataclass
from datetime import date
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from weedmap.config import RunConfig
from weedmap.core.records import ParcelRecord, SpectralObservation
from weedmap.core.sensors import SensorId, get_sensor
from weedmap.eval.report import EvaluationReport, evaluate
from weedmap.exceptions import EmptyTrainingSet, SensorMismatch
from weedmap.features.parcel import (ParcelFeatureVector, aggregate_parcel,
                                     with_orchard_feature)
from weedmap.features.pixel import PixelFeatureVector, assemble_pixel_features
from weedmap.learn.dataset import Dataset
from weedmap.learn.model import ModelArtifact, predict, train_model
from weedmap.learn.registry import (LearnerFactory, default_grid,
                                    load_learners)
from weedmap.learn.search import CrossValidationResult, cross_validate
from weedmap.learn.split import (SplitSpec, stratified_split,
                                 undersample_majority)
from weedmap.preprocess.clouds import filter_cloudy
from weedmap.preprocess.grid import build_grid
from weedmap.preprocess.interpolation import group_by_pixel, resample_pixel

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Preprocessing:
    """Everything needed to turn raw observations into parcel features.

    A trained model records its preprocessing, so that new parcels can be featurized the same way.
    """
    sensor: SensorId
    window_start: date
    window_end: date
    grid_step: int
    cloud_threshold: float
    drop_bands: Tuple[str, ...] = tuple()
    orchard_feature: bool = False

    @staticmethod
    def from_config(cfg: RunConfig) -> "Preprocessing":
        return Preprocessing(cfg.sensor, cfg.window_start, cfg.window_end, cfg.grid_step, cfg.cloud_threshold, tuple(cfg.drop_bands), cfg.orchard_feature)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "sensor": self.sensor.value,
            "window_start": self.window_start.isoformat(),
            "window_end": self.window_end.isoformat(),
            "grid_step": self.grid_step,
            "cloud_threshold": self.cloud_threshold,
            "drop_bands": list(self.drop_bands),
            "orchard_feature": self.orchard_feature
        }

    @staticmethod
    def from_dict(values: Mapping[str, Any]) -> "Preprocessing":
        return Preprocessing(
            get_sensor(values["sensor"]).id,
            date.fromisoformat(values["window_start"]),
            date.fromisoformat(values["window_end"]),
            int(values["grid_step"]),
            float(values["cloud_threshold"]),
            tuple(values.get("drop_bands", list())),
            bool(values.get("orchard_feature", False))
        )


def featurize_pixels(observations: Sequence[SpectralObservation], prep: Preprocessing) -> Dict[str, PixelFeatureVector]:
    """Filter, interpolate and flatten the observations of every pixel.

    Pixels left without any clear observation are skipped.

    Returns: The feature vector of every pixel, by pixel id.

    Throws: `SensorMismatch` if an observation does not come from the configured sensor.
    """
    sensor = get_sensor(prep.sensor)
    for obs in observations:
        if obs.sensor != sensor.id:
            raise SensorMismatch(f"Observation of pixel '{obs.pixel_id}' comes from sensor {obs.sensor.value}, the run is configured for {sensor.id.value}")
    grid = build_grid(prep.window_start, prep.window_end, prep.grid_step)
    clear = filter_cloudy(observations, prep.cloud_threshold)
    vectors = dict()
    for pixel_id, pixel_observations in group_by_pixel(clear).items():
        gridded = resample_pixel(pixel_observations, grid, sensor)
        vectors[pixel_id] = assemble_pixel_features(pixel_id, gridded, sensor, prep.drop_bands)
    return vectors


def featurize(observations: Sequence[SpectralObservation], parcels: Sequence[ParcelRecord], prep: Preprocessing) -> List[ParcelFeatureVector]:
    """Turn raw observations into one feature vector per parcel.

    Runs the cloud filter, groups observations by pixel, interpolates every pixel onto the time
    grid, computes its temporal features and aggregates the pixels of every parcel. Parcels left
    without any featurized pixel are dropped with a warning.

    Args:
      * observations: Validated observations of the parcels.
      * parcels: The parcels to featurize.
      * prep: The preprocessing configuration.

    Returns: The parcel feature vectors, in parcel order.
    """
    pixels = featurize_pixels(observations, prep)
    vectors = list()
    for parcel in parcels:
        members = [pixels[pixel_id] for pixel_id in sorted(parcel.pixel_ids) if pixel_id in pixels]
        if len(members) == 0:
            logger.warning(f"Parcel '{parcel.parcel_id}' has no pixel left after cloud filtering and is dropped")
            continue
        vector = aggregate_parcel(members, parcel)
        if prep.orchard_feature:
            vector = with_orchard_feature(vector, parcel.orchard_type)
        vectors.append(vector)
    logger.info(f"Featurized {len(vectors)} parcels with {len(vectors[0].schema) if vectors else 0} features each")
    return vectors


def labeled_dataset(vectors: Sequence[ParcelFeatureVector]) -> Dataset:
    """Build the dataset of the labeled parcels, warning about the unlabeled ones.

    Throws: `EmptyTrainingSet` if no parcel is labeled.
    """
    labeled = [v for v in vectors if v.label is not None]
    if len(labeled) < len(vectors):
        logger.warning(f"{len(vectors) - len(labeled)} unlabeled parcel(s) are excluded from training and evaluation")
    if len(labeled) == 0:
        raise EmptyTrainingSet("No labeled parcel to train on")
    return Dataset(labeled)


@dataclass(frozen=True)
class ExperimentResult:
    """Outcome of a run: the tuned model, its cross-validation scores and its test evaluation"""
    model: ModelArtifact
    cross_validation: CrossValidationResult
    report: EvaluationReport
    train_size: int
    test_size: int


def prepare_split(cfg: RunConfig, observations: Sequence[SpectralObservation], parcels: Sequence[ParcelRecord]) -> Tuple[Dataset, Dataset]:
    """Featurize the parcels, split them into training and test sets, and undersample the training set"""
    vectors = featurize(observations, parcels, Preprocessing.from_config(cfg))
    data = labeled_dataset(vectors)
    train, test = stratified_split(data, SplitSpec(cfg.test_fraction, cfg.seed, cfg.split_key))
    train = undersample_majority(train, cfg.undersample_fraction, cfg.seed)
    return train, test


def train_and_evaluate(cfg: RunConfig, model_kind: str, train: Dataset, test: Dataset, grid: Optional[Sequence[Mapping[str, Any]]] = None, dataset_id: str = "", learners: Optional[Mapping[str, LearnerFactory]] = None) -> ExperimentResult:
    """Tune a learner by cross-validation, train it on the whole training set and evaluate it on the test set.

    Args:
      * cfg: The run configuration.
      * model_kind: Kind of the learner.
      * train: The training set.
      * test: The test set.
      * grid: Hyperparameter sets to cross-validate, defaults to the grid of the learner.
      * dataset_id: Name of the dataset, recorded in the report.
      * learners: Available learners, defaults to the built-in ones.

    Returns: The tuned model and its evaluation.
    """
    learners = load_learners(cfg.learners) if learners is None else learners
    candidates = [dict(hp) for hp in grid] if grid is not None else default_grid(model_kind)
    cv = cross_validate(train, model_kind, candidates, cfg.folds, cfg.seed, cfg.n_jobs, learners)
    model = train_model(model_kind, train, cv.best_hyperparams, cfg.seed, cfg.n_jobs, learners)
    model = model.with_metadata(preprocessing=Preprocessing.from_config(cfg).to_dict(), cv_mean_weighted_f1=cv.mean_scores[cv.best_index])
    predictions = predict(model, test.rows)
    metadata = {
        "model_kind": model.model_kind,
        "hyperparams": model.hyperparams,
        "seed": model.seed,
        "dataset": dataset_id,
        "schema_fingerprint": model.fingerprint
    }
    report = evaluate([row.label for row in test.rows], predictions, metadata)
    logger.info(f"{model.model_kind} test weighted F1: {report.weighted_f1:.4f}")
    return ExperimentResult(model, cv, report, len(train), len(test))


def run_experiment(cfg: RunConfig, observations: Sequence[SpectralObservation], parcels: Sequence[ParcelRecord], dataset_id: str = "") -> ExperimentResult:
    """Run the whole pipeline: featurize, split, undersample, tune, train and evaluate.

    Throws: any `WeedmapError` raised by a stage.
    """
    train, test = prepare_split(cfg, observations, parcels)
    return train_and_evaluate(cfg, cfg.model, train, test, cfg.grid, dataset_id)
