# forest.py
# MIT License 2026
from typing import Any, Dict, List

import numpy as np
from joblib import Parallel, delayed

from weedmap.core.classes import N_CLASSES
from weedmap.exceptions import EmptyTrainingSet, InvalidHyperparameter
from weedmap.learn.learner import Hyperparams, Learner, check_int, vote
from weedmap.learn.rng import derive_rng
from weedmap.learn.tree import (TreeNodes, grow_classification_tree,
                                resolve_feature_count)


def _grow_tree(X: np.ndarray, y: np.ndarray, hyperparams: Hyperparams, max_features: int, seed: int, index: int) -> TreeNodes:
    """Grow the tree at position `index` of the forest, on its own bootstrap sample"""
    rng = derive_rng(seed, "bootstrap", index)
    if hyperparams["bootstrap"]:
        rows = rng.integers(0, len(y), size=len(y))
    else:
        rows = np.arange(len(y))
    return grow_classification_tree(X[rows], y[rows], N_CLASSES, hyperparams["max_depth"], hyperparams["min_leaf"], max_features, rng)


class RandomForest(Learner):
    """A random forest of CART classification trees.

    Every tree is grown on a bootstrap sample of the training rows (as many rows as the training
    set, drawn with replacement), drawing `features_per_split` features at every node. A row is
    labeled by the majority vote of the trees.

    Hyperparameters:
      * n_trees: Number of trees.
      * max_depth: Maximum depth of the trees, None for unlimited.
      * min_leaf: Minimum number of rows per leaf.
      * features_per_split: "sqrt", "log2", "all", an integer or a fraction of the features.
      * bootstrap: If False, every tree is grown on the full training set.
    """
    kind = "rf"

    def __init__(self, hyperparams: Hyperparams):
        super(RandomForest, self).__init__(hyperparams)
        check_int(self.kind, "n_trees", hyperparams["n_trees"], 1)
        check_int(self.kind, "max_depth", hyperparams["max_depth"], 1, optional=True)
        check_int(self.kind, "min_leaf", hyperparams["min_leaf"], 1)
        if not isinstance(hyperparams["bootstrap"], bool):
            raise InvalidHyperparameter(f"Hyperparameter 'bootstrap' of learner 'rf' must be a boolean, got {hyperparams['bootstrap']!r}")
        # fails early on invalid values
        resolve_feature_count(hyperparams["features_per_split"], 1)
        self._trees: List[TreeNodes] = list()

    @classmethod
    def defaults(cls) -> Hyperparams:
        return {
            "n_trees": 100,
            "max_depth": None,
            "min_leaf": 1,
            "features_per_split": "sqrt",
            "bootstrap": True
        }

    @property
    def trees(self) -> List[TreeNodes]:
        return list(self._trees)

    def fit(self, X: np.ndarray, y: np.ndarray, seed: int, n_jobs: int = 1) -> None:
        if len(y) == 0:
            raise EmptyTrainingSet("Cannot train a random forest without training rows")
        max_features = resolve_feature_count(self._hyperparams["features_per_split"], X.shape[1])
        self._trees = Parallel(n_jobs=n_jobs)(
            delayed(_grow_tree)(X, y, self._hyperparams, max_features, seed, t) for t in range(self._hyperparams["n_trees"])
        )

    def predict_codes(self, X: np.ndarray) -> np.ndarray:
        if X.shape[0] == 0:
            return np.zeros(0, dtype=np.int64)
        votes = np.column_stack([np.argmax(tree.predict_value(X), axis=1) for tree in self._trees])
        return vote(votes, N_CLASSES)

    def get_state(self) -> Dict[str, Any]:
        return {"trees": [tree.to_state() for tree in self._trees]}

    def load_state(self, state: Dict[str, Any]) -> None:
        self._trees = [TreeNodes.from_state(tree) for tree in state["trees"]]
