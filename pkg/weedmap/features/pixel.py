# pixel.py
# MIT License 2026
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Mapping, Sequence, Tuple

import numpy as np
import pandas as pd

from weedmap.core.records import ParcelRecord, TimeSeries
from weedmap.core.sensors import Sensor, SensorId, get_sensor
from weedmap.exceptions import ConfigError, GridMismatch
from weedmap.features.indices import ndvi
from weedmap.features.temporal import first_difference, rate_of_change

NDVI_SOURCE = "NDVI"


@dataclass(frozen=True, eq=False)
class PixelFeatureVector:
    """Flattened temporal features of a single pixel.

    Args:
      * pixel_id: Identifier of the pixel.
      * schema: Ordered feature names.
      * values: Feature values, aligned with the schema.
    """
    pixel_id: str
    schema: Tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if len(self.schema) != len(values):
            raise GridMismatch(f"Pixel '{self.pixel_id}' has {len(values)} values for a schema of {len(self.schema)} features")


def feature_sources(sensor: Sensor, drop_bands: Iterable[str] = ()) -> Tuple[str, ...]:
    """Get the feature sources of a sensor: kept bands in registry order, then NDVI"""
    dropped = set(drop_bands)
    unknown = dropped - set(sensor.band_codes)
    if unknown:
        raise ConfigError(f"Cannot drop unknown bands {sorted(unknown)} from sensor {sensor.id.value}")
    return tuple(code for code in sensor.band_codes if code not in dropped) + (NDVI_SOURCE,)


@lru_cache(maxsize=32)
def _cached_schema(sensor_id: SensorId, n_steps: int, drop_bands: Tuple[str, ...]) -> Tuple[str, ...]:
    names = list()
    for source in feature_sources(get_sensor(sensor_id), drop_bands):
        names += [f"{source}@{k}" for k in range(n_steps)]
        names += [f"{source}_diff@{k}" for k in range(1, n_steps)]
        names += [f"{source}_roc@{k}" for k in range(1, n_steps)]
    return tuple(names)


def pixel_schema(sensor: Sensor, n_steps: int, drop_bands: Iterable[str] = ()) -> Tuple[str, ...]:
    """Get the ordered feature names of a pixel.

    For each source (kept bands in registry order, then NDVI): the grid values `{source}@{k}`,
    then the first differences `{source}_diff@{k}`, then the rates of change `{source}_roc@{k}`,
    where k is the index of the (later) grid date.

    Example:
      >>> len(pixel_schema(get_sensor("S2"), 13))
      518
    """
    return _cached_schema(sensor.id, n_steps, tuple(sorted(set(drop_bands))))


def assemble_pixel_features(pixel_id: str, gridded: Mapping[str, TimeSeries], sensor: Sensor, drop_bands: Iterable[str] = ()) -> PixelFeatureVector:
    """Flatten the gridded band series of a pixel into a feature vector.

    NDVI is computed on the gridded NIR and red series; first differences and rates of change
    are computed for every band and for NDVI.

    Args:
      * pixel_id: Identifier of the pixel.
      * gridded: Mapping band code -> time series, all defined on the same grid.
      * sensor: Sensor of the pixel.
      * drop_bands: Band codes excluded from the features (NDVI is always kept).

    Returns: The pixel feature vector, following `pixel_schema`.

    Throws: `GridMismatch` if a band is missing or the band series do not share their dates.
    """
    missing = [code for code in sensor.band_codes if code not in gridded]
    if missing:
        raise GridMismatch(f"Pixel '{pixel_id}' misses the gridded bands {missing}")
    dates = gridded[sensor.band_codes[0]].dates
    for code in sensor.band_codes:
        if gridded[code].dates != dates:
            raise GridMismatch(f"Band {code} of pixel '{pixel_id}' is not defined on the same grid as the other bands")
    nir_index, red_index = sensor.ndvi_band_pair
    nir = gridded[sensor.code_of(nir_index)].as_array()
    red = gridded[sensor.code_of(red_index)].as_array()
    sources = dict(gridded)
    sources[NDVI_SOURCE] = TimeSeries(dates, ndvi(nir, red).tolist())
    blocks: List[Sequence[float]] = list()
    for source in feature_sources(sensor, drop_bands):
        series = sources[source]
        blocks += [series.values, first_difference(series).values, rate_of_change(series).values]
    values = np.concatenate([np.asarray(block, dtype=np.float64) for block in blocks])
    return PixelFeatureVector(pixel_id, pixel_schema(sensor, len(dates), drop_bands), values)


def write_pixel_dataset(path: str, pixels: Sequence[PixelFeatureVector], parcels: Sequence[ParcelRecord]) -> None:
    """Write the pixel-based dataset: one row per pixel, with its parcel and label.

    Args:
      * path: Path of the CSV file to write.
      * pixels: Pixel feature vectors, sharing one schema.
      * parcels: Parcels owning the pixels. Pixels of other parcels are left out.
    """
    owner = {pixel_id: parcel for parcel in parcels for pixel_id in parcel.pixel_ids}
    pixels = [p for p in pixels if p.pixel_id in owner]
    schema = pixels[0].schema if len(pixels) > 0 else tuple()
    frame = pd.DataFrame([p.values for p in pixels], columns=list(schema))
    frame.insert(0, "label", [owner[p.pixel_id].label.name if owner[p.pixel_id].label is not None else "" for p in pixels])
    frame.insert(0, "parcel_id", [owner[p.pixel_id].parcel_id for p in pixels])
    frame.insert(0, "pixel_id", [p.pixel_id for p in pixels])
    frame.to_csv(path, index=False, lineterminator="\n")
