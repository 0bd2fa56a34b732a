# signatures.py
# MIT License 2026
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Tuple, Union

import numpy as np

from weedmap.core.classes import WeedClass
from weedmap.core.sensors import Sensor, SensorId

ArrayLike = Union[float, np.ndarray]


class Separation(str, Enum):
    """How far the signatures of the practices are from the undisturbed seasonal curve"""
    high = "high"
    medium = "medium"
    low = "low"


# scaling of the practice effects by separation level
SEPARATION_FACTORS: Dict[Separation, float] = {
    Separation.high: 1.0,
    Separation.medium: 0.4,
    Separation.low: 0.1
}


@dataclass(frozen=True)
class SignatureParams:
    """Shape constants of the class signatures (NDVI units and days).

    Args:
      * base_ndvi: NDVI of the undisturbed canopy at the window start.
      * plateau: NDVI reached by the undisturbed canopy at the end of the green-up.
      * green_up_days: Time constant of the exponential green-up.
      * mowing_drop: NDVI removed on the day of mowing.
      * mowing_recovery_days: Days for mowed vegetation to grow back.
      * bare_soil_ndvi: NDVI of freshly tilled bare soil.
      * tillage_recovery_days: Days for tilled ground to be recolonized.
      * spraying_decline: Total NDVI lost while sprayed weeds wither.
      * spraying_decline_days: Days over which sprayed weeds wither.
      * spraying_recovery_days: Days over which half of the sprayed loss grows back.
      * soil_brightness: Relative reflectance increase of red and SWIR bands on bare soil.
      * managed_cover_loss: NDVI lost all season by the short weed cover of managed parcels.
    """
    base_ndvi: float = 0.5
    plateau: float = 0.78
    green_up_days: float = 30.0
    mowing_drop: float = 0.4
    mowing_recovery_days: float = 30.0
    bare_soil_ndvi: float = 0.15
    tillage_recovery_days: float = 60.0
    spraying_decline: float = 0.25
    spraying_decline_days: float = 21.0
    spraying_recovery_days: float = 30.0
    soil_brightness: float = 0.35
    managed_cover_loss: float = 0.12


DEFAULT_SIGNATURE = SignatureParams()


def seasonal_curve(t: ArrayLike, params: SignatureParams = DEFAULT_SIGNATURE) -> ArrayLike:
    """Undisturbed canopy NDVI: a slow exponential rise from `base_ndvi` to the `plateau`"""
    return params.base_ndvi + (params.plateau - params.base_ndvi) * (1 - np.exp(-np.asarray(t, dtype=np.float64) / params.green_up_days))


def managed_curve(t: ArrayLike, separation: Separation = Separation.high, params: SignatureParams = DEFAULT_SIGNATURE) -> ArrayLike:
    """NDVI of a managed parcel away from its practice day: the seasonal curve, lowered by the
    shorter weed cover that regular management keeps between the trees"""
    return seasonal_curve(t, params) - SEPARATION_FACTORS[Separation(separation)] * params.managed_cover_loss


def _linear_recovery(t: np.ndarray, event_day: float, duration: float) -> np.ndarray:
    """1 on the event day, decreasing linearly to 0 after `duration` days, 0 before the event"""
    elapsed = t - event_day
    return np.where(elapsed >= 0, np.clip(1 - elapsed / duration, 0, 1), 0.0)


def soil_exposure(weed_class: WeedClass, event_day: float, t: ArrayLike, separation: Separation = Separation.high, params: SignatureParams = DEFAULT_SIGNATURE) -> ArrayLike:
    """Fraction of bare soil exposed by the practice, in [0, 1] (only tillage exposes soil)"""
    t_arr = np.asarray(t, dtype=np.float64)
    if weed_class != WeedClass.Tillage:
        exposure = np.zeros_like(t_arr)
    else:
        exposure = SEPARATION_FACTORS[Separation(separation)] * _linear_recovery(t_arr, event_day, params.tillage_recovery_days)
    return exposure if np.ndim(t) > 0 else float(exposure)


def class_signature(weed_class: WeedClass, event_day: float, t: ArrayLike, separation: Separation = Separation.high, params: SignatureParams = DEFAULT_SIGNATURE) -> ArrayLike:
    """Get the canonical NDVI of a parcel under a weed management practice.

    * No practice: the seasonal curve.
    * Mowing: the managed curve, minus `mowing_drop` on the event day, recovering linearly.
    * Tillage: bare-soil NDVI on the event day, recovering linearly toward the managed curve.
    * Chemical spraying: a linear decline of `spraying_decline` over `spraying_decline_days`,
      then half of the loss grows back over `spraying_recovery_days`.

    The managed curve is the seasonal curve lowered by `managed_cover_loss`. Practice effects
    and this loss are scaled down by the separation level, which shrinks every signature toward
    the undisturbed curve.

    Args:
      * weed_class: The practice.
      * event_day: Day offset of the practice, from the window start.
      * t: Day offset(s) from the window start.
      * separation: Separation level of the classes.
      * params: Shape constants.

    Returns: The NDVI at t, as a float or an array like t.

    Example:
      >>> class_signature(WeedClass.Mowing, 40, 39) - class_signature(WeedClass.Mowing, 40, 41) >= 0.3
      True
    """
    t_arr = np.asarray(t, dtype=np.float64)
    factor = SEPARATION_FACTORS[Separation(separation)]
    if weed_class == WeedClass.NoPractice:
        value = seasonal_curve(t_arr, params)
        return value if np.ndim(t) > 0 else float(value)
    base = managed_curve(t_arr, separation, params)
    if weed_class == WeedClass.Mowing:
        value = base - factor * params.mowing_drop * _linear_recovery(t_arr, event_day, params.mowing_recovery_days)
    elif weed_class == WeedClass.Tillage:
        value = base - factor * (base - params.bare_soil_ndvi) * _linear_recovery(t_arr, event_day, params.tillage_recovery_days)
    elif weed_class == WeedClass.ChemicalSpraying:
        elapsed = t_arr - event_day
        decline = np.clip(elapsed / params.spraying_decline_days, 0, 1)
        regrowth = 0.5 * np.clip((elapsed - params.spraying_decline_days) / params.spraying_recovery_days, 0, 1)
        value = base - factor * params.spraying_decline * np.where(elapsed >= 0, decline - regrowth, 0.0)
    return value if np.ndim(t) > 0 else float(value)


# (vegetation, bare soil) reflectance of every band, in registry order
ENDMEMBERS: Dict[SensorId, Tuple[Tuple[float, ...], Tuple[float, ...]]] = {
    SensorId.S2: (
        (0.03, 0.04, 0.08, 0.04, 0.12, 0.25, 0.32, 0.40, 0.41, 0.12, 0.01, 0.20, 0.10),
        (0.10, 0.12, 0.16, 0.22, 0.25, 0.27, 0.28, 0.30, 0.31, 0.10, 0.01, 0.38, 0.33)
    ),
    SensorId.PS8B: (
        (0.03, 0.04, 0.07, 0.08, 0.07, 0.04, 0.15, 0.40),
        (0.10, 0.12, 0.15, 0.16, 0.19, 0.22, 0.26, 0.30)
    )
}

# bands brightened by bare soil, besides red
SWIR_BANDS: Dict[SensorId, Tuple[str, ...]] = {
    SensorId.S2: ("B11", "B12"),
    SensorId.PS8B: tuple()
}


def endmembers(sensor: Sensor) -> Tuple[np.ndarray, np.ndarray]:
    """Get the (vegetation, bare soil) reflectance spectra of a sensor"""
    vegetation, soil = ENDMEMBERS[sensor.id]
    return np.array(vegetation), np.array(soil)


def reflectances_from_ndvi(sensor: Sensor, ndvi_values: np.ndarray, exposure: np.ndarray, params: SignatureParams = DEFAULT_SIGNATURE) -> np.ndarray:
    """Back-solve the band reflectances of a series of NDVI values.

    Bands are a linear mixture of the vegetation and bare soil spectra, weighted by the vegetation
    fraction implied by the NDVI. The NIR and red bands are then adjusted so that their sum is the
    mixture's and their NDVI is exactly the target. Exposed bare soil brightens the red and SWIR
    bands (red through the NIR + red sum, which keeps the NDVI unchanged).

    Args:
      * sensor: The sensor.
      * ndvi_values: Target NDVI of every date.
      * exposure: Bare soil exposure of every date, see `soil_exposure`.
      * params: Shape constants.

    Returns: A matrix of reflectances, one row per date, one column per band.
    """
    vegetation, soil = endmembers(sensor)
    nir, red = sensor.ndvi_band_pair
    v = np.asarray(ndvi_values, dtype=np.float64)
    veg_ndvi = (vegetation[nir] - vegetation[red]) / (vegetation[nir] + vegetation[red])
    soil_ndvi = (soil[nir] - soil[red]) / (soil[nir] + soil[red])
    fraction = np.clip((v - soil_ndvi) / (veg_ndvi - soil_ndvi), 0, 1)
    matrix = fraction[:, None] * vegetation[None, :] + (1 - fraction[:, None]) * soil[None, :]
    brightness = 1 + params.soil_brightness * np.asarray(exposure, dtype=np.float64)
    for code in SWIR_BANDS[sensor.id]:
        matrix[:, sensor.index_of(code)] *= brightness
    total = (matrix[:, nir] + matrix[:, red]) * brightness
    matrix[:, nir] = total * (1 + v) / 2
    matrix[:, red] = total * (1 - v) / 2
    return matrix
