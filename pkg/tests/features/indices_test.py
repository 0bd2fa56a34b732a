# indices_test.py
# MIT License 2026
import numpy as np
import pytest

from weedmap.exceptions import NonFiniteInput
from weedmap.features.indices import ndvi

fixtures = [
    (0.5, 0.5, 0.0),
    (0.6, 0.2, 0.5),
    (0.0, 0.0, 0.0),
    (0.4, 0.0, 1.0),
    (0.0, 0.3, -1.0)
]


@pytest.mark.parametrize("nir,red,expected", fixtures)
def test_ndvi(nir, red, expected):
    value = ndvi(nir, red)
    assert isinstance(value, float)
    assert value == pytest.approx(expected)


def test_ndvi_arrays():
    values = ndvi(np.array([0.6, 0.0, 0.3]), np.array([0.2, 0.0, 0.1]))
    assert values == pytest.approx([0.5, 0.0, 0.5])


def test_ndvi_is_bounded():
    rng = np.random.default_rng(3)
    values = ndvi(rng.uniform(0, 1, 1000), rng.uniform(0, 1, 1000))
    assert np.all(values >= -1) and np.all(values <= 1)


@pytest.mark.parametrize("nir,red", [(float("nan"), 0.1), (0.1, float("inf"))])
def test_ndvi_non_finite(nir, red):
    with pytest.raises(NonFiniteInput):
        ndvi(nir, red)
