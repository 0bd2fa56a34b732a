# grid_test.py
# MIT License 2026
from datetime import date

import pytest

from weedmap.exceptions import EmptyWindow
from weedmap.preprocess.grid import build_grid


def test_default_window():
    grid = build_grid(date(2024, 5, 1), date(2024, 8, 31), 10)
    assert grid.n_steps == 13
    assert grid.dates[0] == date(2024, 5, 1)
    assert grid.dates[-1] == date(2024, 8, 29)
    assert grid.end_date == date(2024, 8, 29)


def test_grid_endpoints():
    grid = build_grid(date(2024, 5, 1), date(2024, 5, 11), 10)
    assert grid.dates == (date(2024, 5, 1), date(2024, 5, 11))


def test_days_match_dates():
    grid = build_grid(date(2024, 5, 1), date(2024, 6, 1), 7)
    assert list(grid.days) == [d.toordinal() for d in grid.dates]


@pytest.mark.parametrize("start,end,step", [
    (date(2024, 5, 1), date(2024, 4, 1), 10),
    (date(2024, 5, 1), date(2024, 5, 1), 10),
    (date(2024, 5, 1), date(2024, 8, 31), 0)
])
def test_empty_window(start, end, step):
    with pytest.raises(EmptyWindow):
        build_grid(start, end, step)
