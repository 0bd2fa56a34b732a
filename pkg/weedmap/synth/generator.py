# generator.py
# MIT License 2026
import logging
from dataclasses import dataclass, replace
from datetime import date, timedelta
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, root_validator, validator

from weedmap.core.classes import (ORCHARD_COUNTS, SURVEY_CLASS_COUNTS,
                                  WeedClass, parse_weed_class)
from weedmap.core.records import ParcelRecord, SpectralObservation
from weedmap.core.sensors import SensorId, get_sensor
from weedmap.exceptions import (ConfigError, EmptyWindow, FractionOutOfRange,
                                MalformedInput)
from weedmap.learn.rng import derive_rng
from weedmap.synth.signatures import (DEFAULT_SIGNATURE, Separation,
                                      SignatureParams, class_signature,
                                      reflectances_from_ndvi, soil_exposure)

# cloudy reflectance = CLOUD_MIX * clear reflectance + CLOUD_BRIGHTNESS
CLOUD_MIX = 0.5
CLOUD_BRIGHTNESS = 0.3
# bounds of the cloud fraction of a cloudy observation
CLOUD_FRACTION_RANGE = (0.05, 1.0)
# events happen in the middle 60% of the window
EVENT_WINDOW = (0.2, 0.8)
# bounds of the per-parcel plateau, keeping undisturbed NDVI in [0.5, 0.8]
PLATEAU_RANGE = (0.6, 0.8)
# scaling of the per-parcel plateau and green-up deviations by separation level
SEASONAL_VARIABILITY: Dict[Separation, float] = {
    Separation.high: 0.5,
    Separation.medium: 1.0,
    Separation.low: 1.0
}

logger = logging.getLogger(__name__)


class SynthConfig(BaseModel):
    """Configuration of a synthetic dataset"""
    sensor: SensorId = Field(SensorId.S2, description="Sensor that observes the parcels.")
    window_start: date = Field(date(2024, 5, 1), description="First day of the observation window.")
    window_end: date = Field(date(2024, 8, 31), description="Last day of the observation window.")
    class_counts: Dict[WeedClass, int] = Field(dict(SURVEY_CLASS_COUNTS), description="Number of parcels of every class.")
    pixels_per_parcel: Tuple[int, int] = Field((4, 25), description="Inclusive range of the number of pixels of a parcel.")
    separation: Separation = Field(Separation.high, description="How far the practice signatures are from the undisturbed curve.")
    noise_sd: float = Field(0.02, description="Standard deviation of the additive reflectance noise.")
    brightness_sd: float = Field(0.03, description="Standard deviation of the multiplicative brightness of a pixel.")
    plateau_sd: float = Field(0.04, description="Standard deviation of the seasonal plateau NDVI of a parcel, halved at high separation.")
    green_up_sd: float = Field(0.2, description="Standard deviation of the log green-up time constant of a parcel, halved at high separation.")
    cloud_rate: float = Field(0.2, description="Fraction of the observations covered by clouds.")
    revisit_days: Optional[int] = Field(None, description="Days between two observations, defaults to the sensor revisit time.")
    seed: int = Field(0, description="Master seed of the generator.")

    class Config:
        frozen = True

    @validator("sensor", pre=True)
    def _parse_sensor(cls, value):
        return get_sensor(value).id

    @validator("class_counts", pre=True)
    def _parse_class_counts(cls, value):
        try:
            counts = {parse_weed_class(k): v for k, v in dict(value).items()}
        except MalformedInput as error:
            raise ConfigError(f"Invalid class counts: {error}")
        for c, count in counts.items():
            if not isinstance(count, int) or count < 0:
                raise ConfigError(f"The number of {c.name} parcels must be a nonnegative integer, got {count!r}")
        return counts

    @validator("pixels_per_parcel")
    def _check_pixels(cls, value):
        low, high = value
        if low < 1 or high < low:
            raise ConfigError(f"Invalid range of pixels per parcel {value}, expected 1 <= min <= max")
        return value

    @validator("noise_sd", "brightness_sd", "plateau_sd", "green_up_sd")
    def _check_deviation(cls, value):
        if value < 0:
            raise ConfigError(f"Standard deviations cannot be negative, got {value}")
        return value

    @validator("cloud_rate")
    def _check_cloud_rate(cls, value):
        if not 0 <= value <= 1:
            raise FractionOutOfRange(f"The cloud rate must be in [0, 1], got {value}")
        return value

    @validator("revisit_days")
    def _check_revisit(cls, value):
        if value is not None and value < 1:
            raise ConfigError(f"The revisit time must be at least one day, got {value}")
        return value

    @root_validator(skip_on_failure=True)
    def _check_window(cls, values):
        if values["window_end"] <= values["window_start"]:
            raise EmptyWindow(f"The observation window is empty: it starts on {values['window_start']} and ends on {values['window_end']}")
        return values

    @property
    def window_days(self) -> int:
        return (self.window_end - self.window_start).days

    @property
    def revisit(self) -> int:
        return self.revisit_days if self.revisit_days is not None else get_sensor(self.sensor).revisit_days


@dataclass(frozen=True)
class ParcelTruth:
    """Hidden parameters of a synthetic parcel"""
    parcel_id: str
    weed_class: WeedClass
    orchard_type: str
    event_day: int
    n_pixels: int
    signature: SignatureParams
    phase: int


def _orchard_probabilities(weed_class: WeedClass) -> Tuple[List[str], np.ndarray]:
    orchards = list(ORCHARD_COUNTS.keys())
    weights = np.array([ORCHARD_COUNTS[o][weed_class] for o in orchards], dtype=np.float64)
    return orchards, weights / weights.sum()


def plan_parcels(cfg: SynthConfig) -> List[ParcelTruth]:
    """Draw the hidden parameters of every parcel of a synthetic dataset.

    Classes are shuffled over the parcel identifiers, and every parcel draws its practice day,
    size, orchard type, seasonal curve and revisit phase from its own random stream.

    Returns: One ParcelTruth per parcel, ordered by parcel identifier.
    """
    labels = [c for c in WeedClass for _ in range(cfg.class_counts.get(c, 0))]
    order = derive_rng(cfg.seed, "order").permutation(len(labels))
    first_event = int(round(EVENT_WINDOW[0] * cfg.window_days))
    last_event = int(round(EVENT_WINDOW[1] * cfg.window_days))
    variability = SEASONAL_VARIABILITY[cfg.separation]
    plan = list()
    for i, position in enumerate(order):
        rng = derive_rng(cfg.seed, "parcel", i)
        weed_class = labels[position]
        orchards, probabilities = _orchard_probabilities(weed_class)
        event_day = int(rng.integers(first_event, last_event + 1))
        n_pixels = int(rng.integers(cfg.pixels_per_parcel[0], cfg.pixels_per_parcel[1] + 1))
        plateau = float(np.clip(DEFAULT_SIGNATURE.plateau + rng.normal(0, 1) * cfg.plateau_sd * variability, *PLATEAU_RANGE))
        green_up = float(DEFAULT_SIGNATURE.green_up_days * np.exp(rng.normal(0, 1) * cfg.green_up_sd * variability))
        orchard = orchards[int(rng.choice(len(orchards), p=probabilities))]
        phase = int(rng.integers(0, min(cfg.revisit, cfg.window_days + 1)))
        signature = replace(DEFAULT_SIGNATURE, plateau=plateau, green_up_days=green_up)
        plan.append(ParcelTruth(f"P{i + 1:04d}", weed_class, orchard, event_day, n_pixels, signature, phase))
    return plan


def _generate_parcel(cfg: SynthConfig, truth: ParcelTruth, index: int) -> List[SpectralObservation]:
    sensor = get_sensor(cfg.sensor)
    rng = derive_rng(cfg.seed, "pixels", index)
    days = np.arange(truth.phase, cfg.window_days + 1, cfg.revisit)
    ndvi = class_signature(truth.weed_class, truth.event_day, days, cfg.separation, truth.signature)
    exposure = soil_exposure(truth.weed_class, truth.event_day, days, cfg.separation, truth.signature)
    clear = reflectances_from_ndvi(sensor, ndvi, exposure, truth.signature)
    cloudy = rng.random(len(days)) < cfg.cloud_rate
    cloud_fraction = np.where(cloudy, rng.uniform(*CLOUD_FRACTION_RANGE, size=len(days)), 0.0)
    dates = [cfg.window_start + timedelta(days=int(d)) for d in days]
    observations = list()
    for p in range(truth.n_pixels):
        pixel_id = f"{truth.parcel_id}-px{p + 1:02d}"
        brightness = max(0.5, 1 + rng.normal(0, 1) * cfg.brightness_sd)
        noise = rng.normal(0, 1, size=clear.shape) * cfg.noise_sd
        values = clear * brightness + noise
        values = np.where(cloudy[:, None], CLOUD_MIX * values + CLOUD_BRIGHTNESS, values)
        values = np.clip(values, 0, 1)
        for k, obs_date in enumerate(dates):
            observations.append(SpectralObservation(pixel_id, truth.parcel_id, obs_date, sensor.id, tuple(values[k].tolist()), float(cloud_fraction[k])))
    return observations


def generate_dataset(cfg: SynthConfig) -> Tuple[List[SpectralObservation], List[ParcelRecord]]:
    """Generate labeled synthetic parcels and their spectral observations.

    Every parcel follows the signature of its class around a random practice day in the middle
    60% of the window. Its pixels are observed at the sensor revisit cadence, each with its own
    brightness and additive noise, and a share `cloud_rate` of the acquisition dates is cloudy.

    Args:
      * cfg: Configuration of the dataset.

    Returns: A tuple (`observations`, `parcels`), ordered by parcel, pixel and date.

    Example:
      >>> observations, parcels = generate_dataset(SynthConfig(sensor="PS8B", seed=42))
      >>> len(parcels)
      232
    """
    plan = plan_parcels(cfg)
    observations: List[SpectralObservation] = list()
    parcels = list()
    for index, truth in enumerate(plan):
        parcel_observations = _generate_parcel(cfg, truth, index)
        observations += parcel_observations
        pixel_ids = frozenset(obs.pixel_id for obs in parcel_observations)
        parcels.append(ParcelRecord(truth.parcel_id, pixel_ids, truth.orchard_type, truth.weed_class))
    logger.info(f"Generated {len(parcels)} synthetic parcels and {len(observations)} {cfg.sensor.value} observations")
    return observations, parcels
