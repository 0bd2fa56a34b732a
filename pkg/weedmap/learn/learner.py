# learner.py
# MIT License 2026
from abc import ABC, abstractmethod
from typing import Any, Dict, Iterable, Optional

import numpy as np

from weedmap.exceptions import InvalidHyperparameter

Hyperparams = Dict[str, Any]


class Learner(ABC):
    """A Learner is an abstract class for classifiers that can be trained on parcel features.

    A learner is built from a set of hyperparameters (`from_config`), trained once (`fit`) and
    then used for prediction. Its learned state must be serializable as plain JSON values
    (`get_state`) and restorable (`from_state`), so that trained models can be saved to disk.

    Args:
      * hyperparams: The complete set of hyperparameters of the learner.
    """

    # name under which the learner is registered
    kind = "abstract"

    def __init__(self, hyperparams: Hyperparams):
        super(Learner, self).__init__()
        self._hyperparams = dict(hyperparams)

    @property
    def hyperparams(self) -> Hyperparams:
        return dict(self._hyperparams)

    @abstractmethod
    def fit(self, X: np.ndarray, y: np.ndarray, seed: int, n_jobs: int = 1) -> None:
        """Train the learner.

        Args:
          * X: Training feature matrix, one row per parcel.
          * y: Class ordinals of the training rows.
          * seed: Master seed of the training.
          * n_jobs: Number of parallel jobs the learner may use.

        Throws: `TrainingError` if the learner cannot be trained on these rows.
        """
        pass

    @abstractmethod
    def predict_codes(self, X: np.ndarray) -> np.ndarray:
        """Predict the class ordinal of every row of a feature matrix"""
        pass

    @abstractmethod
    def get_state(self) -> Dict[str, Any]:
        """Get the learned state of the learner, as JSON-compatible values"""
        pass

    @abstractmethod
    def load_state(self, state: Dict[str, Any]) -> None:
        """Restore a learned state produced by `get_state`"""
        pass

    def training_metadata(self) -> Dict[str, Any]:
        """Get additional information recorded during training, e.g., loss curves"""
        return dict()

    @classmethod
    def defaults(cls) -> Hyperparams:
        """Default value of every hyperparameter of the learner"""
        return dict()

    @classmethod
    def from_config(cls, config: Hyperparams) -> "Learner":
        """Build an untrained learner from a (possibly partial) set of hyperparameters.

        Throws: `InvalidHyperparameter` if the set contains unknown or invalid values.
        """
        defaults = cls.defaults()
        unknown = sorted(set(config) - set(defaults))
        if unknown:
            raise InvalidHyperparameter(f"Unknown hyperparameters {unknown} for learner '{cls.kind}', expected a subset of {sorted(defaults)}")
        hyperparams = dict(defaults)
        hyperparams.update(config)
        return cls(hyperparams)

    @classmethod
    def from_state(cls, hyperparams: Hyperparams, state: Dict[str, Any]) -> "Learner":
        """Rebuild a trained learner from its hyperparameters and learned state"""
        learner = cls.from_config(hyperparams)
        learner.load_state(state)
        return learner


def check_int(kind: str, name: str, value: Any, minimum: int, optional: bool = False) -> Optional[int]:
    """Check that a hyperparameter is an integer greater or equal to a minimum"""
    if value is None and optional:
        return None
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < minimum:
        raise InvalidHyperparameter(f"Hyperparameter '{name}' of learner '{kind}' must be an integer >= {minimum}, got {value!r}")
    return int(value)


def check_float(kind: str, name: str, value: Any, low: float, high: float, low_inclusive: bool = False) -> float:
    """Check that a hyperparameter is a number in (low, high], or [low, high] if `low_inclusive`"""
    if isinstance(value, bool) or not isinstance(value, (int, float, np.number)):
        raise InvalidHyperparameter(f"Hyperparameter '{name}' of learner '{kind}' must be a number, got {value!r}")
    above = value >= low if low_inclusive else value > low
    if not above or value > high:
        raise InvalidHyperparameter(f"Hyperparameter '{name}' of learner '{kind}' must be in {'[' if low_inclusive else '('}{low}, {high}], got {value!r}")
    return float(value)


def check_choice(kind: str, name: str, value: Any, choices: Iterable[Any]) -> Any:
    choices = tuple(choices)
    if value not in choices:
        raise InvalidHyperparameter(f"Hyperparameter '{name}' of learner '{kind}' must be one of {choices}, got {value!r}")
    return value


def vote(codes: np.ndarray, n_classes: int) -> np.ndarray:
    """Majority vote over the columns of a matrix of class ordinals, ties going to the lower ordinal"""
    counts = np.zeros((codes.shape[0], n_classes), dtype=np.int64)
    for column in codes.T:
        counts[np.arange(codes.shape[0]), column] += 1
    return np.argmax(counts, axis=1)
