# model_test.py
# MIT License 2026
import json

import numpy as np
import pytest

from tests.utils import blobs, make_dataset
from weedmap.core.classes import WeedClass
from weedmap.exceptions import (EmptyTrainingSet, MalformedInput,
                                SchemaMismatch, UnsupportedModelVersion)
from weedmap.features.parcel import ParcelFeatureVector
from weedmap.learn.dataset import Dataset
from weedmap.learn.model import predict, train_model
from weedmap.learn.serialization import (load_model, model_from_dict,
                                         model_to_dict, save_model)

MO, TL, CS, NP = WeedClass

fixtures = [
    ("rf", {"n_trees": 5, "max_depth": 4}),
    ("gbt", {"n_rounds": 5, "colsample": 0.5}),
    ("knn", {"k": 3, "distance": "manhattan"})
]


@pytest.mark.parametrize("kind,hyperparams", fixtures)
def test_saved_model_predicts_the_same(tmp_path, kind, hyperparams):
    train = blobs({MO: 12, TL: 8, CS: 8, NP: 8}, spread=1.5, seed=1)
    test = blobs({MO: 6, TL: 4, CS: 4, NP: 4}, spread=1.5, seed=2)
    model = train_model(kind, train, hyperparams, seed=3)
    path = tmp_path / "model.json"
    save_model(model, str(path))
    loaded = load_model(str(path))
    assert loaded.model_kind == kind
    assert loaded.fingerprint == model.fingerprint
    assert loaded.hyperparams == model.hyperparams
    assert predict(loaded, test.rows) == predict(model, test.rows)


def test_saving_is_deterministic(tmp_path):
    train = blobs({MO: 10, NP: 10}, seed=4)
    for name in ("a.json", "b.json"):
        save_model(train_model("rf", train, {"n_trees": 3}, seed=7), str(tmp_path / name))
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_hyperparameters_are_completed():
    model = train_model("knn", blobs({MO: 5, TL: 5}), {"k": 1}, seed=0)
    assert model.hyperparams == {"k": 1, "distance": "euclidean", "standardize": True}


def test_predict_checks_the_schema():
    model = train_model("knn", blobs({MO: 5, TL: 5}, n_features=3), {"k": 1}, seed=0)
    row = ParcelFeatureVector("X", None, ("a", "b", "c"), [0.0, 0.0, 0.0])
    with pytest.raises(SchemaMismatch):
        predict(model, [row])


def test_predict_on_no_row():
    model = train_model("knn", blobs({MO: 5, TL: 5}), {"k": 1}, seed=0)
    assert predict(model, []) == []


def test_predictions_are_pointwise():
    data = blobs({MO: 10, TL: 10, CS: 10}, spread=2.0, seed=8)
    model = train_model("rf", data, {"n_trees": 10}, seed=1)
    order = np.random.default_rng(0).permutation(len(data))
    direct = predict(model, data.rows)
    permuted = predict(model, [data.rows[i] for i in order])
    assert permuted == [direct[i] for i in order]


def test_unlabeled_rows_can_be_predicted():
    model = train_model("knn", make_dataset([MO, TL], np.array([[0.0], [1.0]])), {"k": 1}, seed=0)
    rows = [ParcelFeatureVector("U1", None, ("f0",), [0.9])]
    assert predict(model, rows) == [TL]


def test_empty_training_set():
    with pytest.raises(EmptyTrainingSet):
        train_model("gbt", Dataset([], ("f0",)), {}, seed=0)


def test_model_document_errors():
    model = train_model("knn", blobs({MO: 5, TL: 5}), {"k": 1}, seed=0)
    document = json.loads(json.dumps(model_to_dict(model)))
    with pytest.raises(UnsupportedModelVersion):
        model_from_dict(dict(document, format_version=99))
    with pytest.raises(MalformedInput):
        model_from_dict(dict(document, format="something-else"))
    with pytest.raises(MalformedInput):
        model_from_dict(dict(document, model_kind="svm"))
    with pytest.raises(MalformedInput):
        model_from_dict(dict(document, schema=list(reversed(document["schema"]))))


def test_unparsable_model_file(tmp_path):
    path = tmp_path / "model.json"
    path.write_text("{not json")
    with pytest.raises(MalformedInput):
        load_model(str(path))
