# model.py
# MIT License 2026
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from weedmap.core.classes import WeedClass
from weedmap.core.validation import schema_fingerprint
from weedmap.exceptions import EmptyTrainingSet, SchemaMismatch
from weedmap.features.parcel import ParcelFeatureVector
from weedmap.learn.dataset import Dataset
from weedmap.learn.learner import Hyperparams, Learner
from weedmap.learn.registry import LearnerFactory, get_learner_factory

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ModelArtifact:
    """A trained classifier, bound to the feature schema it was trained on.

    Args:
      * model_kind: Kind of the learner ("rf", "gbt", "knn" or a custom kind).
      * hyperparams: Complete hyperparameters of the learner.
      * schema: Feature schema of the training set.
      * seed: Master seed of the training.
      * learner: The trained learner.
      * metadata: Additional information, e.g., the preprocessing configuration or the training loss.
    """
    model_kind: str
    hyperparams: Dict[str, Any]
    schema: Tuple[str, ...]
    seed: int
    learner: Learner
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def fingerprint(self) -> str:
        return schema_fingerprint(self.schema)

    def check_schema(self, schema: Sequence[str]) -> None:
        """Throws: `SchemaMismatch` if a schema differs from the training schema"""
        if schema_fingerprint(schema) != self.fingerprint:
            raise SchemaMismatch(f"The feature schema ({len(schema)} features) differs from the schema the {self.model_kind} model was trained on ({len(self.schema)} features)")

    def with_metadata(self, **metadata) -> "ModelArtifact":
        """Get a copy of the artifact with additional metadata"""
        merged = dict(self.metadata)
        merged.update(metadata)
        return ModelArtifact(self.model_kind, self.hyperparams, self.schema, self.seed, self.learner, merged)


def train_model(kind: str, train: Dataset, hyperparams: Hyperparams, seed: int, n_jobs: int = 1, learners: Optional[Mapping[str, LearnerFactory]] = None) -> ModelArtifact:
    """Train a classifier of a given kind on a labeled dataset.

    Args:
      * kind: Model kind, registered in `learners`.
      * train: The training set.
      * hyperparams: Hyperparameters of the learner; missing ones take their default value.
      * seed: Master seed of the training.
      * n_jobs: Number of parallel jobs the learner may use.
      * learners: Available learners, defaults to the built-in ones.

    Returns: The trained model.

    Throws: `UnknownModelKind`, `InvalidHyperparameter`, `EmptyTrainingSet`, or any training error of the learner.
    """
    if len(train) == 0:
        raise EmptyTrainingSet(f"Cannot train a {kind} model without training rows")
    learner = get_learner_factory(kind, learners)(hyperparams)
    learner.fit(train.matrix(), train.labels(), seed, n_jobs=n_jobs)
    logger.debug(f"Trained a {learner.kind} model on {len(train)} parcels with {learner.hyperparams}")
    return ModelArtifact(str(kind).lower(), learner.hyperparams, train.schema, int(seed), learner, learner.training_metadata())


def train_random_forest(train: Dataset, hyperparams: Hyperparams, seed: int, n_jobs: int = 1) -> ModelArtifact:
    """Train a random forest, see :class:`weedmap.learn.forest.RandomForest` for the hyperparameters"""
    return train_model("rf", train, hyperparams, seed, n_jobs=n_jobs)


def train_gradient_boosting(train: Dataset, hyperparams: Hyperparams, seed: int, n_jobs: int = 1) -> ModelArtifact:
    """Train softmax gradient-boosted trees, see :class:`weedmap.learn.boosting.GradientBoosting` for the hyperparameters"""
    return train_model("gbt", train, hyperparams, seed, n_jobs=n_jobs)


def train_knn(train: Dataset, hyperparams: Hyperparams, standardize: bool = True, seed: int = 0) -> ModelArtifact:
    """Train a k-nearest neighbors classifier, optionally on z-score standardized features.

    Throws: `KTooLarge` if k exceeds the number of training rows.
    """
    params = dict(hyperparams)
    params.setdefault("standardize", standardize)
    return train_model("knn", train, params, seed)


def predict(model: ModelArtifact, rows: Sequence[ParcelFeatureVector]) -> List[WeedClass]:
    """Predict the weed management practice of parcels.

    Every prediction only depends on the model and on its own row.

    Args:
      * model: The trained model.
      * rows: Feature vectors of the parcels, following the schema of the model.

    Returns: One predicted class per row, in the row order.

    Throws: `SchemaMismatch` if a row does not follow the schema of the model.
    """
    if len(rows) == 0:
        return list()
    for row in rows:
        model.check_schema(row.schema)
    X = np.vstack([row.values for row in rows])
    return [WeedClass(int(code)) for code in model.learner.predict_codes(X)]
