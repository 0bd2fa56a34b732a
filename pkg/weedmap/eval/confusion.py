# confusion.py
# MIT License 2026
from typing import Sequence

import numpy as np

from weedmap.core.classes import N_CLASSES, WeedClass
from weedmap.exceptions import EmptyInput, LengthMismatch, MalformedInput


class ConfusionMatrix(object):
    """Counts of (true class, predicted class) pairs.

    Rows are true classes and columns are predicted classes, both in WeedClass ordinal order.

    Args:
      * counts: A 4x4 matrix of nonnegative integers.
    """

    def __init__(self, counts: Sequence[Sequence[int]]):
        super(ConfusionMatrix, self).__init__()
        matrix = np.array(counts, dtype=np.int64)
        if matrix.shape != (N_CLASSES, N_CLASSES):
            raise MalformedInput(f"A confusion matrix must be {N_CLASSES}x{N_CLASSES}, got shape {matrix.shape}")
        if np.any(matrix < 0):
            raise MalformedInput("A confusion matrix cannot contain negative counts")
        matrix.setflags(write=False)
        self._counts = matrix

    @property
    def counts(self) -> np.ndarray:
        return self._counts

    @property
    def total(self) -> int:
        return int(self._counts.sum())

    @property
    def supports(self) -> np.ndarray:
        """Number of parcels of every true class (row sums)"""
        return self._counts.sum(axis=1)

    @property
    def predicted(self) -> np.ndarray:
        """Number of parcels predicted in every class (column sums)"""
        return self._counts.sum(axis=0)

    def count(self, true: WeedClass, predicted: WeedClass) -> int:
        return int(self._counts[int(true), int(predicted)])

    def to_list(self):
        return self._counts.tolist()

    def __eq__(self, other) -> bool:
        return isinstance(other, ConfusionMatrix) and np.array_equal(self._counts, other._counts)

    def __repr__(self) -> str:
        return f"ConfusionMatrix({self.to_list()})"


def confusion_matrix(y_true: Sequence[WeedClass], y_pred: Sequence[WeedClass]) -> ConfusionMatrix:
    """Tally the true and predicted classes of a set of parcels.

    Args:
      * y_true: True classes.
      * y_pred: Predicted classes, aligned with `y_true`.

    Returns: The confusion matrix, where `counts[i][j]` is the number of parcels of class i predicted as j.

    Throws: `LengthMismatch` if the sequences differ in length, `EmptyInput` if they are empty.

    Example:
      >>> cm = confusion_matrix([WeedClass.Mowing, WeedClass.Mowing, WeedClass.Tillage], [WeedClass.Mowing, WeedClass.Tillage, WeedClass.Tillage])
      >>> cm.count(WeedClass.Mowing, WeedClass.Tillage)
      1
    """
    if len(y_true) != len(y_pred):
        raise LengthMismatch(f"Got {len(y_true)} true classes but {len(y_pred)} predictions")
    if len(y_true) == 0:
        raise EmptyInput("Cannot build a confusion matrix without predictions")
    cells = np.array([int(t) for t in y_true]) * N_CLASSES + np.array([int(p) for p in y_pred])
    return ConfusionMatrix(np.bincount(cells, minlength=N_CLASSES * N_CLASSES).reshape(N_CLASSES, N_CLASSES))
