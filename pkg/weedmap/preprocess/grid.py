# grid.py
# MIT License 2026
from dataclasses import dataclass
from datetime import date, timedelta
from typing import Tuple

import numpy as np

from weedmap.exceptions import EmptyWindow

DEFAULT_STEP_DAYS = 10


@dataclass(frozen=True)
class TimeGrid:
    """A regular grid of calendar dates.

    Args:
      * start_date: First date of the grid.
      * step_days: Number of days between two successive grid dates.
      * n_steps: Number of grid dates.
    """
    start_date: date
    step_days: int
    n_steps: int

    def __post_init__(self):
        if self.step_days < 1 or self.n_steps < 1:
            raise EmptyWindow(f"A time grid needs a positive step and at least one date, got step={self.step_days} and n_steps={self.n_steps}")

    @property
    def dates(self) -> Tuple[date, ...]:
        return tuple(self.start_date + timedelta(days=k * self.step_days) for k in range(self.n_steps))

    @property
    def end_date(self) -> date:
        return self.start_date + timedelta(days=(self.n_steps - 1) * self.step_days)

    @property
    def days(self) -> np.ndarray:
        """Grid dates as day ordinals"""
        start = self.start_date.toordinal()
        return start + self.step_days * np.arange(self.n_steps, dtype=np.int64)


def build_grid(window_start: date, window_end: date, step_days: int = DEFAULT_STEP_DAYS) -> TimeGrid:
    """Build the regular time grid covering an observation window.

    The grid is anchored on the window start, and its last date never exceeds the window end.

    Args:
      * window_start: First day of the observation window.
      * window_end: Last day of the observation window.
      * step_days: Days between two grid dates.

    Returns: A TimeGrid with floor((end - start) / step) + 1 dates.

    Throws: `EmptyWindow` if the window is empty or inverted, or if the step is not positive.

    Example:
      >>> grid = build_grid(date(2024, 5, 1), date(2024, 8, 31), 10)
      >>> grid.n_steps, grid.end_date
      (13, datetime.date(2024, 8, 29))
    """
    if step_days < 1:
        raise EmptyWindow(f"The grid step must be at least one day, got {step_days}")
    if window_end <= window_start:
        raise EmptyWindow(f"The observation window is empty: it starts on {window_start} and ends on {window_end}")
    n_steps = (window_end - window_start).days // step_days + 1
    return TimeGrid(window_start, step_days, n_steps)
