# records.py
# MIT License 2026
from dataclasses import dataclass
from datetime import date
from typing import FrozenSet, Optional, Tuple

import numpy as np

from weedmap.core.classes import WeedClass
from weedmap.core.sensors import SensorId
from weedmap.exceptions import EmptyParcel, LengthMismatch, NonAscendingDates


@dataclass(frozen=True)
class SpectralObservation:
    """One pixel, observed at one date by one sensor.

    Args:
      * pixel_id: Identifier of the pixel.
      * parcel_id: Identifier of the parcel containing the pixel.
      * date: Calendar date of the acquisition.
      * sensor: Identifier of the sensor.
      * reflectances: Surface reflectances, as fractions of unity, in the sensor band order.
      * cloud_fraction: Fraction of the observation covered by clouds.
    """
    __slots__ = ("pixel_id", "parcel_id", "date", "sensor", "reflectances", "cloud_fraction")
    pixel_id: str
    parcel_id: str
    date: date
    sensor: SensorId
    reflectances: Tuple[float, ...]
    cloud_fraction: float


@dataclass(frozen=True)
class TimeSeries:
    """A univariate time series at day resolution.

    Args:
      * dates: Strictly ascending calendar dates.
      * values: Values observed at each date.

    Throws: `NonAscendingDates` or `LengthMismatch` if the invariants are violated.
    """
    dates: Tuple[date, ...]
    values: Tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "dates", tuple(self.dates))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if len(self.dates) != len(self.values):
            raise LengthMismatch(f"A time series needs as many dates as values, got {len(self.dates)} dates and {len(self.values)} values")
        for previous, current in zip(self.dates, self.dates[1:]):
            if current <= previous:
                raise NonAscendingDates(f"Time series dates must be strictly ascending, found {previous} followed by {current}")

    def __len__(self) -> int:
        return len(self.values)

    @property
    def days(self) -> np.ndarray:
        """Dates as day ordinals"""
        return np.array([d.toordinal() for d in self.dates], dtype=np.int64)

    def as_array(self) -> np.ndarray:
        """Values as a float numpy array"""
        return np.array(self.values, dtype=np.float64)


@dataclass(frozen=True)
class ParcelRecord:
    """An agricultural parcel (field), described by the set of its pixels.

    Args:
      * parcel_id: Identifier of the parcel, unique within a dataset.
      * pixel_ids: Non-empty set of pixel identifiers covering the parcel.
      * orchard_type: Orchard grown in the parcel.
      * label: Weed management practice, if known.
    """
    parcel_id: str
    pixel_ids: FrozenSet[str]
    orchard_type: str
    label: Optional[WeedClass] = None

    def __post_init__(self):
        object.__setattr__(self, "pixel_ids", frozenset(self.pixel_ids))
        if len(self.pixel_ids) == 0:
            raise EmptyParcel(f"Parcel '{self.parcel_id}' has no pixel")
