# temporal.py
# MIT License 2026
import numpy as np

from weedmap.core.records import TimeSeries
from weedmap.exceptions import NonAscendingDates


def first_difference(series: TimeSeries) -> TimeSeries:
    """Compute the first-order differences of a time series.

    The k-th output value is x[k+1] - x[k], dated at the later date of the pair.

    Example:
      >>> first_difference(TimeSeries(dates, (0.2, 0.5, 0.4))).values
      (0.3, -0.1)
    """
    values = series.as_array()
    return TimeSeries(series.dates[1:], np.diff(values).tolist())


def rate_of_change(series: TimeSeries) -> TimeSeries:
    """Compute the rates of change of a time series, in value units per day.

    The k-th output value is (x[k+1] - x[k]) / (t[k+1] - t[k]), dated at the later date of the pair.

    Throws: `NonAscendingDates` if two successive dates are not strictly ascending.
    """
    days = series.days
    elapsed = np.diff(days)
    if np.any(elapsed <= 0):
        raise NonAscendingDates("Rates of change require strictly ascending dates")
    rates = np.diff(series.as_array()) / elapsed
    return TimeSeries(series.dates[1:], rates.tolist())
