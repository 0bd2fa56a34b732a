# pipeline_test.py
# MIT License 2026
import logging

import numpy as np
import pytest

from tests.utils import make_observation, small_synth_config
from weedmap.config import load_config
from weedmap.core.classes import WeedClass
from weedmap.core.records import ParcelRecord
from weedmap.core.sensors import SensorId
from weedmap.exceptions import (ClassTooSmall, EmptyTrainingSet,
                                SensorMismatch)
from weedmap.learn.serialization import model_to_dict
from weedmap.pipeline import (Preprocessing, featurize, featurize_pixels,
                              labeled_dataset, prepare_split, run_experiment)
from weedmap.synth.generator import generate_dataset

MO, TL, CS, NP = WeedClass

# fewer pixels keep the featurization quick
SYNTH = small_synth_config(class_counts={"Mowing": 20, "Tillage": 15, "ChemicalSpraying": 15, "NoPractice": 15}, pixels_per_parcel=(1, 3))


@pytest.fixture(scope="module")
def synthetic():
    return generate_dataset(SYNTH)


def run_config(**overrides):
    values = {"sensor": "S2", "grid": [{"n_trees": 15}], "folds": 3, "undersample_fraction": 0.0, "seed": 1}
    values.update(overrides)
    return load_config(overrides=values)


def test_preprocessing_round_trip():
    prep = Preprocessing.from_config(run_config(drop_bands=["B10"], orchard_feature=True))
    assert prep.sensor == SensorId.S2
    assert Preprocessing.from_dict(prep.to_dict()) == prep


def test_featurize(synthetic):
    observations, parcels = synthetic
    vectors = featurize(observations, parcels, Preprocessing.from_config(run_config()))
    assert [v.parcel_id for v in vectors] == [p.parcel_id for p in parcels]
    assert [v.label for v in vectors] == [p.label for p in parcels]
    assert all(len(v.schema) == 3 * 518 for v in vectors)
    assert all(np.all(np.isfinite(v.values)) for v in vectors)


def test_featurize_with_orchard_and_dropped_band(synthetic):
    observations, parcels = synthetic
    prep = Preprocessing.from_config(run_config(orchard_feature=True, drop_bands=["B10"]))
    vector = featurize(observations, parcels[:1], prep)[0]
    assert len(vector.schema) == 3 * (518 - 39) + 7
    assert vector.values[-7:].sum() == 1.0


def test_featurize_pixels(synthetic):
    observations, parcels = synthetic
    pixels = featurize_pixels(observations, Preprocessing.from_config(run_config()))
    assert set(pixels) == set().union(*(p.pixel_ids for p in parcels))


def test_cloudy_parcel_is_dropped(caplog):
    observations = [make_observation("A-px01", "A", 0), make_observation("B-px01", "B", 0, cloud=0.5)]
    parcels = [ParcelRecord("A", frozenset({"A-px01"}), "Olives", MO), ParcelRecord("B", frozenset({"B-px01"}), "Olives", TL)]
    with caplog.at_level(logging.WARNING):
        vectors = featurize(observations, parcels, Preprocessing.from_config(run_config()))
    assert [v.parcel_id for v in vectors] == ["A"]
    assert any("'B' has no pixel left" in r.getMessage() for r in caplog.records)


def test_wrong_sensor():
    observations = [make_observation("A-px01", "A", 0, sensor="PS8B")]
    parcels = [ParcelRecord("A", frozenset({"A-px01"}), "Olives", MO)]
    with pytest.raises(SensorMismatch):
        featurize(observations, parcels, Preprocessing.from_config(run_config()))


def test_labeled_dataset(synthetic, caplog):
    observations, parcels = synthetic
    vectors = featurize(observations, parcels[:4], Preprocessing.from_config(run_config()))
    unlabeled = [v.__class__(v.parcel_id, None, v.schema, v.values) for v in vectors]
    with caplog.at_level(logging.WARNING):
        data = labeled_dataset(vectors[:2] + unlabeled[2:])
    assert len(data) == 2
    assert any("2 unlabeled parcel(s)" in r.getMessage() for r in caplog.records)
    with pytest.raises(EmptyTrainingSet):
        labeled_dataset(unlabeled)


def test_split_sizes(synthetic):
    observations, parcels = synthetic
    train, test = prepare_split(run_config(), observations, parcels)
    assert len(train) + len(test) == 65
    assert test.class_counts[MO] == 4
    assert test.class_counts[TL] == 3


def test_run_experiment(synthetic):
    observations, parcels = synthetic
    result = run_experiment(run_config(), observations, parcels, "synthetic")
    assert result.model.model_kind == "rf"
    assert result.model.hyperparams["n_trees"] == 15
    assert result.model.metadata["preprocessing"]["sensor"] == "S2"
    assert result.report.metadata["dataset"] == "synthetic"
    assert result.report.confusion.total == result.test_size
    assert result.report.weighted_f1 >= 0.6


def test_run_is_reproducible(synthetic):
    observations, parcels = synthetic
    cfg = run_config(model="knn", grid=[{"k": 1}, {"k": 3}])
    first = run_experiment(cfg, observations, parcels)
    second = run_experiment(cfg, observations, parcels)
    assert model_to_dict(first.model) == model_to_dict(second.model)
    assert first.report == second.report


def test_class_too_small_to_split():
    observations = [make_observation(f"{p}-px01", p, 0, value=0.1 + i / 100) for i, p in enumerate(["A", "B", "C"])]
    parcels = [
        ParcelRecord("A", frozenset({"A-px01"}), "Olives", MO),
        ParcelRecord("B", frozenset({"B-px01"}), "Olives", MO),
        ParcelRecord("C", frozenset({"C-px01"}), "Olives", TL)
    ]
    with pytest.raises(ClassTooSmall):
        prepare_split(run_config(), observations, parcels)
