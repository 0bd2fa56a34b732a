# validation.py
# MIT License 2026
from hashlib import sha256
from math import isfinite
from typing import Sequence

from weedmap.core.records import SpectralObservation
from weedmap.core.sensors import Sensor
from weedmap.exceptions import (BandCountMismatch, CloudFractionOutOfRange,
                                NegativeReflectance, NonFiniteValue,
                                SensorMismatch)


def validate_observation(obs: SpectralObservation, sensor: Sensor) -> SpectralObservation:
    """Check that a spectral observation satisfies the record invariants.

    Args:
      * obs: The observation to validate.
      * sensor: The sensor that is expected to have produced the observation.

    Returns: The observation, unchanged.

    Throws: `BandCountMismatch`, `NonFiniteValue`, `NegativeReflectance` or `CloudFractionOutOfRange`,
    naming the offending field, pixel and date.
    """
    if obs.sensor != sensor.id:
        raise SensorMismatch(f"Observation of pixel '{obs.pixel_id}' at {obs.date} comes from sensor {obs.sensor}, expected {sensor.id.value}")
    if len(obs.reflectances) != sensor.n_bands:
        raise BandCountMismatch("reflectances", obs.pixel_id, obs.date, f"expected {sensor.n_bands} bands for sensor {sensor.id.value}, got {len(obs.reflectances)}")
    for index, value in enumerate(obs.reflectances):
        if not isfinite(value):
            raise NonFiniteValue(f"reflectances[{sensor.code_of(index)}]", obs.pixel_id, obs.date, f"value {value} is not finite")
        if value < 0:
            raise NegativeReflectance(f"reflectances[{sensor.code_of(index)}]", obs.pixel_id, obs.date, f"value {value} is negative")
    if not isfinite(obs.cloud_fraction):
        raise NonFiniteValue("cloud_fraction", obs.pixel_id, obs.date, f"value {obs.cloud_fraction} is not finite")
    if obs.cloud_fraction < 0 or obs.cloud_fraction > 1:
        raise CloudFractionOutOfRange("cloud_fraction", obs.pixel_id, obs.date, f"value {obs.cloud_fraction} is not in [0, 1]")
    return obs


def schema_fingerprint(schema: Sequence[str]) -> str:
    """Compute a stable digest of an ordered feature schema.

    Two schemas share a fingerprint only if they list the same feature names in the same order.
    """
    digest = sha256()
    for name in schema:
        digest.update(name.encode("utf-8"))
        digest.update(b"\n")
    return digest.hexdigest()
