# search.py
# MIT License 2026
import logging
from dataclasses import dataclass
from typing import List, Mapping, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from weedmap.core.classes import WeedClass
from weedmap.eval.confusion import confusion_matrix
from weedmap.eval.metrics import per_class_metrics, weighted_f1
from weedmap.exceptions import ClassSmallerThanFolds, ConfigError
from weedmap.learn.dataset import Dataset
from weedmap.learn.learner import Hyperparams
from weedmap.learn.registry import LearnerFactory, get_learner_factory
from weedmap.learn.split import stratified_folds

DEFAULT_FOLDS = 5

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CandidateScore:
    """Cross-validation scores of one hyperparameter set"""
    hyperparams: Hyperparams
    fold_scores: Tuple[float, ...]

    @property
    def mean(self) -> float:
        return float(np.mean(self.fold_scores))


@dataclass(frozen=True)
class CrossValidationResult:
    """Outcome of a cross-validated hyperparameter search.

    Args:
      * model_kind: Kind of the tuned learner.
      * folds: Number of folds.
      * candidates: Scores of every candidate, in grid order.
      * best_index: Position in the grid of the candidate of highest mean score.
    """
    model_kind: str
    folds: int
    candidates: Tuple[CandidateScore, ...]
    best_index: int

    @property
    def best_hyperparams(self) -> Hyperparams:
        return dict(self.candidates[self.best_index].hyperparams)

    @property
    def mean_scores(self) -> List[float]:
        return [c.mean for c in self.candidates]

    def to_frame(self) -> pd.DataFrame:
        """Get one row per candidate: its position, hyperparameters, fold scores and mean score"""
        rows = list()
        for position, candidate in enumerate(self.candidates):
            row = {"candidate": position, "hyperparams": ";".join(f"{k}={v}" for k, v in candidate.hyperparams.items())}
            row.update({f"fold_{f}": score for f, score in enumerate(candidate.fold_scores)})
            row["mean_weighted_f1"] = candidate.mean
            row["best"] = position == self.best_index
            rows.append(row)
        return pd.DataFrame(rows)


def _score_fold(factory: LearnerFactory, hyperparams: Hyperparams, X: np.ndarray, y: np.ndarray, assignment: np.ndarray, fold: int, seed: int) -> float:
    """Train a candidate on every fold but one, and get its weighted F1 on the held-out fold"""
    learner = factory(hyperparams)
    held_out = assignment == fold
    learner.fit(X[~held_out], y[~held_out], seed)
    predicted = learner.predict_codes(X[held_out])
    cm = confusion_matrix([WeedClass(int(c)) for c in y[held_out]], [WeedClass(int(c)) for c in predicted])
    return weighted_f1(per_class_metrics(cm))


def cross_validate(train: Dataset, model_kind: str, grid: Sequence[Hyperparams], folds: int = DEFAULT_FOLDS, seed: int = 0, n_jobs: int = 1, learners: Optional[Mapping[str, LearnerFactory]] = None) -> CrossValidationResult:
    """Score every hyperparameter set of a grid by stratified k-fold cross-validation.

    The rows of every class are dealt to the folds at random (under `seed`), and every candidate
    is scored by its mean weighted F1 over the folds. The best candidate is the one of highest
    mean score, ties going to the earliest in the grid. Folds and candidates may be evaluated in
    parallel without changing the result.

    Args:
      * train: The training set.
      * model_kind: Kind of the learner to tune.
      * grid: Candidate hyperparameter sets, in preference order.
      * folds: Number of folds, at least 2.
      * seed: Master seed of the folds and of the trainings.
      * n_jobs: Number of parallel jobs.
      * learners: Available learners, defaults to the built-in ones.

    Returns: The scores of all candidates and the best one.

    Throws: `ClassSmallerThanFolds` if a class has fewer rows than folds.

    Example:
      >>> result = cross_validate(train, "knn", [{"k": 1}, {"k": 3}], folds=5, seed=42)
      >>> result.best_hyperparams
      {'k': 1}
    """
    if folds < 2:
        raise ConfigError(f"Cross-validation needs at least 2 folds, got {folds}")
    if len(grid) == 0:
        raise ConfigError("Cannot cross-validate an empty hyperparameter grid")
    for c, count in train.class_counts.items():
        if 0 < count < folds:
            raise ClassSmallerThanFolds(f"Class {c.name} has {count} training rows, fewer than the {folds} cross-validation folds")
    factory = get_learner_factory(model_kind, learners)
    X = train.matrix()
    y = train.labels()
    assignment = stratified_folds(y, folds, seed)
    jobs = [(position, fold) for position in range(len(grid)) for fold in range(folds)]
    scores = Parallel(n_jobs=n_jobs)(
        delayed(_score_fold)(factory, grid[position], X, y, assignment, fold, seed) for position, fold in jobs
    )
    candidates = list()
    for position, hyperparams in enumerate(grid):
        fold_scores = tuple(scores[position * folds:(position + 1) * folds])
        candidates.append(CandidateScore(dict(hyperparams), fold_scores))
        logger.info(f"{model_kind} candidate {position} {dict(hyperparams)}: mean weighted F1 {candidates[-1].mean:.4f}")
    means = [c.mean for c in candidates]
    best = int(np.argmax(means))
    logger.info(f"Best {model_kind} candidate: {candidates[best].hyperparams} (mean weighted F1 {means[best]:.4f})")
    return CrossValidationResult(str(model_kind).lower(), folds, tuple(candidates), best)
