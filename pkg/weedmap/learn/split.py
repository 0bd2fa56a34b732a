# split.py
# MIT License 2026
import logging
from dataclasses import dataclass
from hashlib import sha256
from math import floor
from typing import Dict, List, Tuple

import numpy as np

from weedmap.core.classes import WeedClass
from weedmap.exceptions import ClassTooSmall, ConfigError, FractionOutOfRange
from weedmap.learn.dataset import Dataset
from weedmap.learn.rng import derive_rng

DEFAULT_TEST_FRACTION = 0.2
DEFAULT_UNDERSAMPLE_FRACTION = 0.006
SPLIT_KEYS = ("random", "parcel_hash")

logger = logging.getLogger(__name__)


def round_half_up(value: float) -> int:
    """Round to the nearest integer, halves going up (2.5 -> 3)"""
    return int(floor(value + 0.5))


@dataclass(frozen=True)
class SplitSpec:
    """How a dataset is split between training and test rows.

    Args:
      * test_fraction: Fraction of every class reserved for the test set, in (0, 1).
      * seed: Seed of the split.
      * key: "random" draws the test rows of each class uniformly at random, "parcel_hash" ranks
        them by a seeded hash of their parcel id, so that two datasets over the same parcels
        reserve the same test parcels.
    """
    test_fraction: float = DEFAULT_TEST_FRACTION
    seed: int = 0
    key: str = "random"

    def __post_init__(self):
        if not 0 < self.test_fraction < 1:
            raise FractionOutOfRange(f"The test fraction must be in (0, 1), got {self.test_fraction}")
        if self.key not in SPLIT_KEYS:
            raise ConfigError(f"Unknown split key '{self.key}', expected one of {SPLIT_KEYS}")

    def test_count(self, class_count: int) -> int:
        """Number of test rows of a class of `class_count` rows.

        Example:
          >>> [SplitSpec(0.2).test_count(n) for n in (141, 33, 31, 27)]
          [28, 7, 6, 5]
        """
        return min(max(round_half_up(self.test_fraction * class_count), 1), class_count - 1)

    def test_counts(self, class_counts: Dict[WeedClass, int]) -> Dict[WeedClass, int]:
        return {c: self.test_count(n) if n > 0 else 0 for c, n in class_counts.items()}


def _parcel_rank(seed: int, parcel_id: str) -> str:
    return sha256(f"{seed}:{parcel_id}".encode("utf-8")).hexdigest()


def stratified_split(data: Dataset, spec: SplitSpec) -> Tuple[Dataset, Dataset]:
    """Split a dataset into a training set and a test set, class by class.

    Args:
      * data: The labeled dataset to split.
      * spec: Test fraction, seed and selection key of the split.

    Returns: A tuple (`train`, `test`), both keeping the relative row order of the input.

    Throws: `ClassTooSmall` if a class present in the dataset has fewer than two rows.

    Example:
      >>> train, test = stratified_split(data, SplitSpec(test_fraction=0.2, seed=42))
      >>> test.class_counts[WeedClass.Mowing]
      28
    """
    test_positions: List[int] = list()
    for label in data.present_classes:
        positions = data.indices_of(label)
        if len(positions) < 2:
            raise ClassTooSmall(f"Class {label.name} has {len(positions)} row(s), at least 2 are needed to split it")
        count = spec.test_count(len(positions))
        if spec.key == "parcel_hash":
            ranked = sorted(positions, key=lambda i: _parcel_rank(spec.seed, data.rows[i].parcel_id))
            chosen = ranked[:count]
        else:
            permutation = derive_rng(spec.seed, "split", int(label)).permutation(len(positions))
            chosen = positions[permutation[:count]]
        test_positions += [int(i) for i in chosen]
    test_set = set(test_positions)
    train = data.subset(i for i in range(len(data)) if i not in test_set)
    test = data.subset(sorted(test_set))
    logger.info(f"Split {len(data)} parcels into {len(train)} training and {len(test)} test parcels")
    return train, test


def majority_class(data: Dataset) -> WeedClass:
    """Get the most frequent class, ties going to the lower ordinal"""
    counts = data.class_counts
    return max(WeedClass, key=lambda c: (counts[c], -int(c)))


def undersample_majority(train: Dataset, fraction: float, seed: int) -> Dataset:
    """Randomly remove a fraction of the majority class rows.

    `round(fraction * n)` rows of the majority class (n rows) are removed, but at least one
    majority row is always kept. Other classes are untouched.

    Args:
      * train: The training set to rebalance.
      * fraction: Fraction of the majority class to remove, in [0, 1).
      * seed: Seed of the draw.

    Returns: The undersampled training set, keeping the relative row order of the input.

    Throws: `FractionOutOfRange` if the fraction is not in [0, 1).
    """
    if not 0 <= fraction < 1:
        raise FractionOutOfRange(f"The undersampling fraction must be in [0, 1), got {fraction}")
    if len(train) == 0 or fraction == 0:
        return train
    majority = majority_class(train)
    positions = train.indices_of(majority)
    removed = min(round_half_up(fraction * len(positions)), len(positions) - 1)
    if removed == 0:
        return train
    permutation = derive_rng(seed, "undersample").permutation(len(positions))
    excluded = set(int(i) for i in positions[permutation[:removed]])
    logger.info(f"Undersampling removed {removed} of {len(positions)} {majority.name} parcels")
    return train.subset(i for i in range(len(train)) if i not in excluded)


def stratified_folds(labels: np.ndarray, folds: int, seed: int) -> np.ndarray:
    """Assign every row to a cross-validation fold, class by class.

    The rows of each class are shuffled, then dealt to the folds in turn, so fold sizes of a
    class differ by one at most.

    Returns: The fold number of every row.
    """
    assignment = np.zeros(len(labels), dtype=np.int64)
    for label in np.unique(labels):
        positions = np.flatnonzero(labels == label)
        permutation = derive_rng(seed, "folds", int(label)).permutation(len(positions))
        assignment[positions[permutation]] = np.arange(len(positions)) % folds
    return assignment
