# forest_test.py
# MIT License 2026
import numpy as np
import pytest

from tests.utils import blobs, make_dataset
from weedmap.core.classes import WeedClass
from weedmap.exceptions import EmptyTrainingSet, InvalidHyperparameter
from weedmap.learn.dataset import Dataset
from weedmap.learn.forest import RandomForest
from weedmap.learn.model import predict, train_random_forest

MO, TL, CS, NP = WeedClass


def test_single_class_training_set():
    data = make_dataset([CS] * 6, np.random.default_rng(0).normal(size=(6, 3)))
    model = train_random_forest(data, {"n_trees": 5}, seed=1)
    assert set(predict(model, data.rows)) == {CS}


def test_single_unbootstrapped_tree_is_pure():
    rng = np.random.default_rng(1)
    data = make_dataset([WeedClass(int(c)) for c in rng.integers(0, 4, 50)], rng.normal(size=(50, 5)))
    model = train_random_forest(data, {"n_trees": 1, "max_depth": None, "min_leaf": 1, "features_per_split": "all", "bootstrap": False}, seed=0)
    assert predict(model, data.rows) == [row.label for row in data.rows]


def test_separable_clusters():
    train = blobs({MO: 30, TL: 15, CS: 15, NP: 15}, seed=1)
    test = blobs({MO: 10, TL: 5, CS: 5, NP: 5}, seed=2)
    model = train_random_forest(train, {"n_trees": 25}, seed=3)
    accuracy = np.mean([p == row.label for p, row in zip(predict(model, test.rows), test.rows)])
    assert accuracy >= 0.9


def test_training_is_deterministic_across_jobs():
    train = blobs({MO: 20, TL: 10, CS: 10, NP: 10}, spread=1.5, seed=4)
    a = train_random_forest(train, {"n_trees": 8}, seed=5, n_jobs=1)
    b = train_random_forest(train, {"n_trees": 8}, seed=5, n_jobs=2)
    assert a.learner.get_state() == b.learner.get_state()


def test_seed_changes_the_forest():
    train = blobs({MO: 20, TL: 10, CS: 10, NP: 10}, spread=1.5, seed=4)
    a = train_random_forest(train, {"n_trees": 4}, seed=5)
    b = train_random_forest(train, {"n_trees": 4}, seed=6)
    assert a.learner.get_state() != b.learner.get_state()


def test_empty_training_set():
    with pytest.raises(EmptyTrainingSet):
        train_random_forest(Dataset([], ("f0",)), {}, seed=0)


@pytest.mark.parametrize("hyperparams", [{"n_trees": 0}, {"max_depth": 0}, {"min_leaf": 0}, {"bootstrap": "yes"}, {"features_per_split": "most"}, {"depth": 3}])
def test_invalid_hyperparameters(hyperparams):
    with pytest.raises(InvalidHyperparameter):
        RandomForest.from_config(hyperparams)


def test_votes_break_ties_toward_lower_ordinal():
    forest = RandomForest.from_config({"n_trees": 2})
    forest.load_state({"trees": [
        {"feature": [-1], "threshold": [0.0], "left": [-1], "right": [-1], "value": [[0, 0, 0, 1]]},
        {"feature": [-1], "threshold": [0.0], "left": [-1], "right": [-1], "value": [[0, 1, 0, 0]]}
    ]})
    assert forest.predict_codes(np.zeros((1, 1))).tolist() == [1]
