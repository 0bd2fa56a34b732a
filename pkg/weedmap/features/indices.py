# indices.py
# MIT License 2026
from typing import Union

import numpy as np

from weedmap.exceptions import NonFiniteInput

Reflectance = Union[float, np.ndarray]


def ndvi(nir: Reflectance, red: Reflectance) -> Reflectance:
    """Compute the Normalized Difference Vegetation Index.

    .. math:: (NIR - RED) / (NIR + RED)

    A zero denominator (dark or masked pixel) yields 0 instead of NaN.

    Args:
      * nir: Near-infrared reflectance(s), non negative.
      * red: Red reflectance(s), non negative.

    Returns: NDVI value(s) in [-1, 1], as a float for scalar inputs and an array otherwise.

    Throws: `NonFiniteInput` if an input is NaN or infinite.

    Example:
      >>> ndvi(0.6, 0.2)
      0.5
      >>> ndvi(0.0, 0.0)
      0.0
    """
    nir_arr = np.asarray(nir, dtype=np.float64)
    red_arr = np.asarray(red, dtype=np.float64)
    if not (np.all(np.isfinite(nir_arr)) and np.all(np.isfinite(red_arr))):
        raise NonFiniteInput("NDVI inputs must be finite reflectances")
    total = nir_arr + red_arr
    with np.errstate(divide="ignore", invalid="ignore"):
        index = np.where(total == 0, 0.0, (nir_arr - red_arr) / np.where(total == 0, 1.0, total))
    if index.ndim == 0:
        return float(index)
    return index
