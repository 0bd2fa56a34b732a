# dataset.py
# MIT License 2026
from collections import OrderedDict
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from weedmap.core.classes import N_CLASSES, WeedClass
from weedmap.core.validation import schema_fingerprint
from weedmap.exceptions import SchemaMismatch
from weedmap.features.parcel import ParcelFeatureVector


class Dataset(object):
    """A labeled set of parcel feature vectors sharing one schema.

    Args:
      * rows: Labeled parcel feature vectors.
      * schema: The shared feature schema. Defaults to the schema of the first row.

    Throws: `SchemaMismatch` if a row is unlabeled or does not follow the schema.
    """

    def __init__(self, rows: Iterable[ParcelFeatureVector], schema: Sequence[str] = None):
        super(Dataset, self).__init__()
        self._rows = tuple(rows)
        if schema is None:
            if len(self._rows) == 0:
                raise SchemaMismatch("Cannot infer the schema of an empty dataset")
            schema = self._rows[0].schema
        self._schema = tuple(schema)
        for row in self._rows:
            if row.label is None:
                raise SchemaMismatch(f"Parcel '{row.parcel_id}' has no label and cannot be part of a dataset")
            if row.schema != self._schema:
                raise SchemaMismatch(f"Parcel '{row.parcel_id}' does not follow the dataset schema")
        self._class_counts = OrderedDict((c, 0) for c in WeedClass)
        for row in self._rows:
            self._class_counts[row.label] += 1

    @property
    def rows(self) -> Tuple[ParcelFeatureVector, ...]:
        return self._rows

    @property
    def schema(self) -> Tuple[str, ...]:
        return self._schema

    @property
    def fingerprint(self) -> str:
        return schema_fingerprint(self._schema)

    @property
    def class_counts(self) -> Dict[WeedClass, int]:
        """Number of rows per class, for every class in ordinal order"""
        return dict(self._class_counts)

    @property
    def present_classes(self) -> List[WeedClass]:
        return [c for c, count in self._class_counts.items() if count > 0]

    def __len__(self) -> int:
        return len(self._rows)

    def matrix(self) -> np.ndarray:
        """Get the feature matrix, one row per parcel"""
        if len(self._rows) == 0:
            return np.zeros((0, len(self._schema)), dtype=np.float64)
        return np.vstack([row.values for row in self._rows])

    def labels(self) -> np.ndarray:
        """Get the class ordinals of the rows"""
        return np.array([int(row.label) for row in self._rows], dtype=np.int64)

    def indices_of(self, label: WeedClass) -> np.ndarray:
        """Get the positions of the rows of a class, in row order"""
        return np.flatnonzero(self.labels() == int(label))

    def subset(self, positions: Iterable[int]) -> "Dataset":
        """Build the dataset made of the rows at the given positions, in that order"""
        return Dataset([self._rows[i] for i in positions], self._schema)

    def onehot(self) -> np.ndarray:
        """Get the labels as a one-hot matrix with a column per class"""
        encoded = np.zeros((len(self._rows), N_CLASSES), dtype=np.float64)
        encoded[np.arange(len(self._rows)), self.labels()] = 1.0
        return encoded
