# boosting.py
# MIT License 2026
import logging
from typing import Any, Dict, List, Tuple

import numpy as np

from weedmap.core.classes import N_CLASSES
from weedmap.exceptions import EmptyTrainingSet
from weedmap.learn.learner import (Hyperparams, Learner, check_float,
                                   check_int)
from weedmap.learn.rng import derive_rng
from weedmap.learn.tree import (TreeNodes, bin_matrix, compute_bin_edges,
                                grow_histogram_tree)

# lower bound of the class priors used as initial log-odds
MIN_PRIOR = 1e-12

logger = logging.getLogger(__name__)


def softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - np.max(logits, axis=1, keepdims=True)
    exp = np.exp(shifted)
    return exp / np.sum(exp, axis=1, keepdims=True)


def cross_entropy(logits: np.ndarray, y: np.ndarray) -> float:
    """Mean softmax cross-entropy of integer labels"""
    shifted = logits - np.max(logits, axis=1, keepdims=True)
    log_norm = np.log(np.sum(np.exp(shifted), axis=1))
    return float(np.mean(log_norm - shifted[np.arange(len(y)), y]))


class GradientBoosting(Learner):
    """Multiclass gradient-boosted trees with a softmax cross-entropy objective.

    The model starts from the log class priors. Every round fits, for every class present in the
    training set, one regression tree to the negative gradient of the loss (one-hot label minus
    predicted probability), and adds its output scaled by the learning rate to the class logits.
    Leaves predict the mean negative gradient of their rows, without second-order weighting or
    regularization. The mean training loss is recorded after every round.

    Hyperparameters:
      * n_rounds: Number of boosting rounds.
      * learning_rate: Shrinkage of every tree, in (0, 1].
      * max_depth: Depth of the trees.
      * min_leaf: Minimum number of rows per leaf.
      * max_bins: Number of quantile bins per feature used to search splits.
      * colsample: Fraction of the features drawn for every tree.
    """
    kind = "gbt"

    def __init__(self, hyperparams: Hyperparams):
        super(GradientBoosting, self).__init__(hyperparams)
        check_int(self.kind, "n_rounds", hyperparams["n_rounds"], 1)
        check_float(self.kind, "learning_rate", hyperparams["learning_rate"], 0, 1)
        check_int(self.kind, "max_depth", hyperparams["max_depth"], 1)
        check_int(self.kind, "min_leaf", hyperparams["min_leaf"], 1)
        check_int(self.kind, "max_bins", hyperparams["max_bins"], 2)
        check_float(self.kind, "colsample", hyperparams["colsample"], 0, 1)
        self._init_logits = np.zeros(N_CLASSES)
        self._rounds: List[List[Tuple[int, TreeNodes]]] = list()
        self._loss_history: List[float] = list()

    @classmethod
    def defaults(cls) -> Hyperparams:
        return {
            "n_rounds": 100,
            "learning_rate": 0.1,
            "max_depth": 3,
            "min_leaf": 1,
            "max_bins": 64,
            "colsample": 1.0
        }

    @property
    def loss_history(self) -> List[float]:
        """Mean training cross-entropy after every round"""
        return list(self._loss_history)

    def _tree_features(self, n_features: int, seed: int, round_index: int, label: int) -> np.ndarray:
        colsample = self._hyperparams["colsample"]
        if colsample >= 1:
            return np.arange(n_features)
        size = max(1, int(colsample * n_features))
        rng = derive_rng(seed, "colsample", round_index, label)
        return np.sort(rng.choice(n_features, size=size, replace=False))

    def fit(self, X: np.ndarray, y: np.ndarray, seed: int, n_jobs: int = 1) -> None:
        if len(y) == 0:
            raise EmptyTrainingSet("Cannot train gradient boosting without training rows")
        hp = self._hyperparams
        onehot = np.zeros((len(y), N_CLASSES))
        onehot[np.arange(len(y)), y] = 1.0
        prior = onehot.mean(axis=0)
        present = np.flatnonzero(prior > 0)
        self._init_logits = np.log(np.maximum(prior, MIN_PRIOR))
        logits = np.tile(self._init_logits, (len(y), 1))
        edges = compute_bin_edges(X, hp["max_bins"])
        codes = bin_matrix(X, edges)
        self._rounds = list()
        self._loss_history = list()
        for r in range(hp["n_rounds"]):
            residual = onehot - softmax(logits)
            trees = list()
            for label in present:
                features = self._tree_features(X.shape[1], seed, r, int(label))
                tree = grow_histogram_tree(codes, edges, residual[:, label], hp["max_depth"], hp["min_leaf"], features)
                trees.append((int(label), tree))
            for label, tree in trees:
                logits[:, label] += hp["learning_rate"] * tree.predict_value(X)[:, 0]
            self._rounds.append(trees)
            self._loss_history.append(cross_entropy(logits, y))
        logger.debug(f"Gradient boosting training loss went from {self._loss_history[0]:.6f} to {self._loss_history[-1]:.6f}")

    def decision_function(self, X: np.ndarray) -> np.ndarray:
        """Get the class logits of every row"""
        logits = np.tile(self._init_logits, (X.shape[0], 1))
        for trees in self._rounds:
            for label, tree in trees:
                logits[:, label] += self._hyperparams["learning_rate"] * tree.predict_value(X)[:, 0]
        return logits

    def predict_codes(self, X: np.ndarray) -> np.ndarray:
        if X.shape[0] == 0:
            return np.zeros(0, dtype=np.int64)
        return np.argmax(self.decision_function(X), axis=1)

    def training_metadata(self) -> Dict[str, Any]:
        return {"loss_history": self.loss_history}

    def get_state(self) -> Dict[str, Any]:
        return {
            "init_logits": self._init_logits.tolist(),
            "rounds": [[{"class": label, "tree": tree.to_state()} for label, tree in trees] for trees in self._rounds],
            "loss_history": self.loss_history
        }

    def load_state(self, state: Dict[str, Any]) -> None:
        self._init_logits = np.array(state["init_logits"], dtype=np.float64)
        self._rounds = [[(int(t["class"]), TreeNodes.from_state(t["tree"])) for t in trees] for trees in state["rounds"]]
        self._loss_history = [float(v) for v in state.get("loss_history", list())]
