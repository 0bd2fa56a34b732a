# knn.py
# MIT License 2026
from typing import Any, Dict

import numpy as np

from weedmap.core.classes import N_CLASSES
from weedmap.exceptions import EmptyTrainingSet, KTooLarge
from weedmap.learn.learner import (Hyperparams, Learner, check_choice,
                                   check_int, vote)

DISTANCES = ("euclidean", "manhattan")

# upper bound of the number of cells of a (query, train, feature) difference block
BLOCK_CELLS = 4_000_000


def pairwise_distances(A: np.ndarray, B: np.ndarray, metric: str = "euclidean") -> np.ndarray:
    """Compute the distance between every row of A and every row of B, by brute force.

    Distances are computed from the coordinate differences (not from the expansion of the
    squared norm), so equal vectors are always at distance exactly 0.

    Returns: A matrix of shape (len(A), len(B)).
    """
    distances = np.empty((A.shape[0], B.shape[0]), dtype=np.float64)
    step = max(1, BLOCK_CELLS // max(1, B.shape[0] * B.shape[1]))
    for start in range(0, A.shape[0], step):
        diff = A[start:start + step, None, :] - B[None, :, :]
        if metric == "manhattan":
            distances[start:start + step] = np.sum(np.abs(diff), axis=2)
        else:
            distances[start:start + step] = np.sqrt(np.sum(diff ** 2, axis=2))
    return distances


class KNearestNeighbors(Learner):
    """A brute-force k-nearest neighbors classifier.

    The training rows are stored, optionally z-score standardized with their per-feature mean
    and population standard deviation (features of zero deviation are only centered). A row is
    labeled by the majority class of its k nearest training rows. Among training rows at the same
    distance, the earlier row is the nearer one.

    Hyperparameters:
      * k: Number of neighbors.
      * distance: "euclidean" or "manhattan".
      * standardize: If True, features are standardized before computing distances.
    """
    kind = "knn"

    def __init__(self, hyperparams: Hyperparams):
        super(KNearestNeighbors, self).__init__(hyperparams)
        check_int(self.kind, "k", hyperparams["k"], 1)
        check_choice(self.kind, "distance", hyperparams["distance"], DISTANCES)
        check_choice(self.kind, "standardize", hyperparams["standardize"], (True, False))
        self._mean = np.zeros(0)
        self._scale = np.ones(0)
        self._X = np.zeros((0, 0))
        self._y = np.zeros(0, dtype=np.int64)

    @classmethod
    def defaults(cls) -> Hyperparams:
        return {
            "k": 5,
            "distance": "euclidean",
            "standardize": True
        }

    def _transform(self, X: np.ndarray) -> np.ndarray:
        return (X - self._mean) / self._scale

    def fit(self, X: np.ndarray, y: np.ndarray, seed: int, n_jobs: int = 1) -> None:
        if len(y) == 0:
            raise EmptyTrainingSet("Cannot train a KNN model without training rows")
        if self._hyperparams["k"] > len(y):
            raise KTooLarge(f"Cannot look for {self._hyperparams['k']} neighbors among {len(y)} training rows")
        if self._hyperparams["standardize"]:
            self._mean = X.mean(axis=0)
            std = X.std(axis=0)
            self._scale = np.where(std > 0, std, 1.0)
        else:
            self._mean = np.zeros(X.shape[1])
            self._scale = np.ones(X.shape[1])
        self._X = self._transform(X)
        self._y = np.asarray(y, dtype=np.int64).copy()

    def neighbors(self, X: np.ndarray) -> np.ndarray:
        """Get the positions of the k nearest training rows of every row, nearest first"""
        distances = pairwise_distances(self._transform(X), self._X, self._hyperparams["distance"])
        return np.argsort(distances, axis=1, kind="stable")[:, :self._hyperparams["k"]]

    def predict_codes(self, X: np.ndarray) -> np.ndarray:
        if X.shape[0] == 0:
            return np.zeros(0, dtype=np.int64)
        return vote(self._y[self.neighbors(X)], N_CLASSES)

    def get_state(self) -> Dict[str, Any]:
        return {
            "mean": self._mean.tolist(),
            "scale": self._scale.tolist(),
            "X": self._X.tolist(),
            "y": self._y.tolist()
        }

    def load_state(self, state: Dict[str, Any]) -> None:
        self._mean = np.array(state["mean"], dtype=np.float64)
        self._scale = np.array(state["scale"], dtype=np.float64)
        self._X = np.array(state["X"], dtype=np.float64).reshape(len(state["y"]), len(self._mean))
        self._y = np.array(state["y"], dtype=np.int64)
