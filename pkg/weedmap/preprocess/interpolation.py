# interpolation.py
# MIT License 2026
from collections import OrderedDict
from datetime import date
from typing import Dict, List, Sequence

import numpy as np

from weedmap.core.records import SpectralObservation, TimeSeries
from weedmap.core.sensors import Sensor
from weedmap.exceptions import EmptySeries
from weedmap.preprocess.grid import TimeGrid


def interpolate_to_grid(series: TimeSeries, grid: TimeGrid) -> TimeSeries:
    """Resample a time series onto a regular grid using linear interpolation.

    Grid dates between two observations get the linear interpolant, grid dates that coincide
    with an observation get the observed value, and grid dates before the first (after the last)
    observation get the first (last) observed value.

    Args:
      * series: The irregular time series to resample.
      * grid: The target time grid.

    Returns: A time series defined on every grid date.

    Throws: `EmptySeries` if the series has no observation.

    Example:
      >>> series = TimeSeries((date(2024, 5, 1), date(2024, 5, 21)), (0.2, 0.6))
      >>> interpolate_to_grid(series, build_grid(date(2024, 5, 1), date(2024, 5, 21), 10)).values
      (0.2, 0.4, 0.6)
    """
    if len(series) == 0:
        raise EmptySeries("Cannot interpolate a time series without observation")
    values = np.interp(grid.days, series.days, series.as_array())
    return TimeSeries(grid.dates, values.tolist())


def group_by_pixel(observations: Sequence[SpectralObservation]) -> "OrderedDict[str, List[SpectralObservation]]":
    """Group observations by pixel, each group sorted by date.

    Observations of one pixel that share a calendar date are merged into a single observation
    whose reflectances and cloud fraction are the band-wise means.

    Returns: An ordered mapping pixel_id -> observations, ordered by pixel_id.
    """
    groups: Dict[str, Dict[date, List[SpectralObservation]]] = dict()
    for obs in observations:
        groups.setdefault(obs.pixel_id, dict()).setdefault(obs.date, list()).append(obs)
    result = OrderedDict()
    for pixel_id in sorted(groups):
        merged = list()
        for obs_date in sorted(groups[pixel_id]):
            same_day = groups[pixel_id][obs_date]
            if len(same_day) == 1:
                merged.append(same_day[0])
                continue
            first = same_day[0]
            reflectances = np.mean(np.array([o.reflectances for o in same_day], dtype=np.float64), axis=0)
            cloud = float(np.mean([o.cloud_fraction for o in same_day]))
            merged.append(SpectralObservation(first.pixel_id, first.parcel_id, obs_date, first.sensor, tuple(reflectances.tolist()), cloud))
        result[pixel_id] = merged
    return result


def resample_pixel(observations: Sequence[SpectralObservation], grid: TimeGrid, sensor: Sensor) -> Dict[str, TimeSeries]:
    """Interpolate every band of a pixel onto a time grid.

    Args:
      * observations: Clear observations of a single pixel, sorted by strictly ascending date.
      * grid: The target time grid.
      * sensor: Sensor of the observations.

    Returns: A mapping band code -> gridded time series, in the sensor band order.

    Throws: `EmptySeries` if the pixel has no observation.
    """
    if len(observations) == 0:
        raise EmptySeries("Cannot resample a pixel without any clear observation")
    dates = tuple(obs.date for obs in observations)
    matrix = np.array([obs.reflectances for obs in observations], dtype=np.float64)
    gridded = OrderedDict()
    for band in sensor.bands:
        gridded[band.code] = interpolate_to_grid(TimeSeries(dates, matrix[:, band.index].tolist()), grid)
    return gridded
