# utils.py
# MIT License 2026
from datetime import date, timedelta
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from weedmap.core.classes import WeedClass
from weedmap.core.records import ParcelRecord, SpectralObservation
from weedmap.core.sensors import get_sensor
from weedmap.features.parcel import ParcelFeatureVector
from weedmap.learn.dataset import Dataset
from weedmap.synth.generator import SynthConfig, generate_dataset

WINDOW_START = date(2024, 5, 1)
WINDOW_END = date(2024, 8, 31)


def day(offset: int) -> date:
    """Date `offset` days after the start of the default window"""
    return WINDOW_START + timedelta(days=offset)


def make_observation(pixel_id: str = "P1-px01", parcel_id: str = "P1", offset: int = 0, sensor: str = "S2", value: float = 0.1, cloud: float = 0.0, reflectances: Optional[Sequence[float]] = None) -> SpectralObservation:
    """An observation whose bands all share `value`, unless reflectances are given"""
    s = get_sensor(sensor)
    values = tuple(reflectances) if reflectances is not None else tuple([value] * s.n_bands)
    return SpectralObservation(pixel_id, parcel_id, day(offset), s.id, values, cloud)


def make_rows(labels: Sequence[WeedClass], matrix: np.ndarray, prefix: str = "P") -> list:
    schema = tuple(f"f{j}" for j in range(matrix.shape[1]))
    return [ParcelFeatureVector(f"{prefix}{i:04d}", label, schema, matrix[i]) for i, label in enumerate(labels)]


def make_dataset(labels: Sequence[WeedClass], matrix: np.ndarray) -> Dataset:
    return Dataset(make_rows(labels, np.asarray(matrix, dtype=np.float64)))


def blobs(counts: Dict[WeedClass, int], n_features: int = 6, spread: float = 0.3, seed: int = 0) -> Dataset:
    """Gaussian clusters, one per class, centered far apart"""
    rng = np.random.default_rng(seed)
    labels = [c for c in WeedClass for _ in range(counts.get(c, 0))]
    centers = np.eye(len(WeedClass), n_features) * 3.0
    matrix = np.array([centers[int(c)] + rng.normal(0, spread, n_features) for c in labels])
    return make_dataset(labels, matrix.reshape(len(labels), n_features))


def small_synth_config(**kwargs) -> SynthConfig:
    """A small, quick synthetic dataset"""
    values = {
        "class_counts": {"Mowing": 12, "Tillage": 10, "ChemicalSpraying": 10, "NoPractice": 10},
        "pixels_per_parcel": (2, 4),
        "seed": 7
    }
    values.update(kwargs)
    return SynthConfig(**values)


@lru_cache(maxsize=2)
def survey_dataset(sensor: str = "PS8B", separation: str = "high", seed: int = 42) -> Tuple[List[SpectralObservation], List[ParcelRecord]]:
    """A synthetic dataset with the class counts of the orchard survey, generated once per session"""
    return generate_dataset(SynthConfig(sensor=sensor, separation=separation, seed=seed))
