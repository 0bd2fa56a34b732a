# parcel.py
# MIT License 2026
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from weedmap.core.classes import ORCHARD_TYPES, OTHER_ORCHARD, WeedClass
from weedmap.core.records import ParcelRecord
from weedmap.core.validation import schema_fingerprint
from weedmap.exceptions import (EmptyParcel, NonFiniteValue, SchemaMismatch)
from weedmap.features.pixel import PixelFeatureVector

STATISTICS = ("mean", "median", "std")


@dataclass(frozen=True, eq=False)
class ParcelFeatureVector:
    """Aggregated features of a parcel, i.e., one instance of the learning problem.

    Args:
      * parcel_id: Identifier of the parcel.
      * label: Weed management practice of the parcel, if known.
      * schema: Ordered feature names.
      * values: Finite feature values, aligned with the schema.
    """
    parcel_id: str
    label: Optional[WeedClass]
    schema: Tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "schema", tuple(self.schema))
        if len(self.schema) != len(values):
            raise SchemaMismatch(f"Parcel '{self.parcel_id}' has {len(values)} values for a schema of {len(self.schema)} features")
        if not np.all(np.isfinite(values)):
            raise NonFiniteValue("values", None, None, f"parcel '{self.parcel_id}' has non finite aggregated features")

    @property
    def fingerprint(self) -> str:
        return schema_fingerprint(self.schema)


def parcel_schema(pixel_schema: Sequence[str]) -> Tuple[str, ...]:
    """Get the aggregated schema: every pixel feature for the mean, then the median, then the std"""
    return tuple(f"{feature}:{stat}" for stat in STATISTICS for feature in pixel_schema)


def aggregate_parcel(pixels: Sequence[PixelFeatureVector], parcel: ParcelRecord) -> ParcelFeatureVector:
    """Aggregate the pixel features of a parcel into mean, median and standard deviation.

    The median of an even number of pixels is the mean of the two middle values and the
    standard deviation is the population one (divide by n), so single-pixel parcels get a
    zero deviation. Pixels are aggregated in pixel_id order, which makes the result
    independent of the order of the input.

    Args:
      * pixels: Non-empty feature vectors of the parcel pixels, sharing one schema.
      * parcel: The parcel owning the pixels.

    Returns: The parcel feature vector, labeled with the parcel label.

    Throws: `EmptyParcel` if there is no pixel, `SchemaMismatch` if the pixel schemas differ
    or if a pixel does not belong to the parcel.

    Example:
      >>> vector = aggregate_parcel([pixel_a, pixel_b], parcel)  # a feature valued 0.2 and 0.6
      >>> vector.values  # mean, median, std
      array([0.4, 0.4, 0.2])
    """
    if len(pixels) == 0:
        raise EmptyParcel(f"Parcel '{parcel.parcel_id}' has no pixel to aggregate")
    schema = pixels[0].schema
    for pixel in pixels:
        if pixel.schema != schema:
            raise SchemaMismatch(f"Pixel '{pixel.pixel_id}' of parcel '{parcel.parcel_id}' does not share the schema of the other pixels")
        if pixel.pixel_id not in parcel.pixel_ids:
            raise SchemaMismatch(f"Pixel '{pixel.pixel_id}' does not belong to parcel '{parcel.parcel_id}'")
    ordered = sorted(pixels, key=lambda p: p.pixel_id)
    matrix = np.vstack([p.values for p in ordered])
    values = np.concatenate([
        np.mean(matrix, axis=0),
        np.median(matrix, axis=0),
        np.std(matrix, axis=0)
    ])
    return ParcelFeatureVector(parcel.parcel_id, parcel.label, parcel_schema(schema), values)


def with_orchard_feature(vector: ParcelFeatureVector, orchard_type: str) -> ParcelFeatureVector:
    """Extend a parcel feature vector with a one-hot encoding of its orchard type.

    Unknown orchard types are encoded as the "other" orchard.
    """
    orchard = orchard_type if orchard_type in ORCHARD_TYPES else OTHER_ORCHARD
    names = tuple(f"orchard={name}" for name in ORCHARD_TYPES)
    onehot = np.array([1.0 if name == orchard else 0.0 for name in ORCHARD_TYPES])
    return ParcelFeatureVector(vector.parcel_id, vector.label, vector.schema + names, np.concatenate([vector.values, onehot]))
