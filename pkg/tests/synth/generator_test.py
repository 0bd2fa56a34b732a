# generator_test.py
# MIT License 2026
from collections import Counter

import numpy as np
import pytest

from tests.utils import small_synth_config
from weedmap.config import load_synth_config
from weedmap.core.classes import WeedClass
from weedmap.core.sensors import get_sensor
from weedmap.exceptions import ConfigError, EmptyWindow, FractionOutOfRange
from weedmap.synth.generator import (CLOUD_FRACTION_RANGE, SynthConfig,
                                     generate_dataset, plan_parcels)
from weedmap.synth.signatures import class_signature

MO, TL, CS, NP = WeedClass


def test_default_plan():
    plan = plan_parcels(SynthConfig())
    assert len(plan) == 232
    assert Counter(p.weed_class for p in plan) == {MO: 141, TL: 33, CS: 31, NP: 27}
    assert [p.parcel_id for p in plan] == sorted(p.parcel_id for p in plan)
    days = SynthConfig().window_days
    assert all(0.2 * days - 1 <= p.event_day <= 0.8 * days + 1 for p in plan)
    assert all(4 <= p.n_pixels <= 25 for p in plan)


def test_dataset_shape():
    cfg = small_synth_config()
    observations, parcels = generate_dataset(cfg)
    assert len(parcels) == 42
    plan = plan_parcels(cfg)
    assert [len(p.pixel_ids) for p in parcels] == [t.n_pixels for t in plan]
    values = np.array([obs.reflectances for obs in observations])
    assert values.shape[1] == get_sensor("S2").n_bands
    assert np.all((values >= 0) & (values <= 1))
    clouds = np.array([obs.cloud_fraction for obs in observations])
    assert np.all((clouds == 0) | ((clouds >= CLOUD_FRACTION_RANGE[0]) & (clouds <= CLOUD_FRACTION_RANGE[1])))
    assert 0 < np.mean(clouds > 0) < 0.5


def test_noiseless_pixels_follow_their_signature():
    cfg = small_synth_config(pixels_per_parcel=(1, 1), noise_sd=0.0, brightness_sd=0.0, cloud_rate=0.0)
    observations, parcels = generate_dataset(cfg)
    truths = {t.parcel_id: t for t in plan_parcels(cfg)}
    nir, red = get_sensor("S2").ndvi_band_pair
    for obs in observations:
        truth = truths[obs.parcel_id]
        day = (obs.date - cfg.window_start).days
        ndvi = (obs.reflectances[nir] - obs.reflectances[red]) / (obs.reflectances[nir] + obs.reflectances[red])
        assert ndvi == pytest.approx(class_signature(truth.weed_class, truth.event_day, day, cfg.separation, truth.signature), abs=1e-9)


def test_revisit_cadence():
    cfg = small_synth_config(sensor="PS8B", class_counts={"Tillage": 1}, pixels_per_parcel=(1, 1))
    observations, _ = generate_dataset(cfg)
    days = [(obs.date - cfg.window_start).days for obs in observations]
    assert set(np.diff(days)) == {1}
    assert len(observations[0].reflectances) == 8


def test_generation_is_deterministic():
    first = generate_dataset(small_synth_config())
    assert generate_dataset(small_synth_config()) == first
    assert generate_dataset(small_synth_config(seed=8)) != first


@pytest.mark.parametrize("overrides,error", [
    ({"class_counts": {"Mowing": -1}}, ConfigError),
    ({"class_counts": {"Unknown": 3}}, ConfigError),
    ({"pixels_per_parcel": (3, 2)}, ConfigError),
    ({"cloud_rate": 1.5}, FractionOutOfRange),
    ({"window_end": "2024-04-01"}, EmptyWindow),
    ({"revisit_days": 0}, ConfigError),
    ({"sensor": "L8"}, ConfigError)
])
def test_invalid_synth_config(overrides, error):
    with pytest.raises(error):
        load_synth_config(overrides=overrides)
