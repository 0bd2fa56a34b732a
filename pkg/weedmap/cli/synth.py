# synth.py
# MIT License 2026
import logging
import os
from typing import Dict, Optional, Tuple

import click

from weedmap.cli.utils import (exit_on_error, install_logger,
                               log_level_option, prepare_out_dir)
from weedmap.config import load_synth_config
from weedmap.core.classes import WeedClass, parse_weed_class
from weedmap.core.sensors import SensorId, get_sensor
from weedmap.exceptions import ConfigError, MalformedInput
from weedmap.io.observations import write_observations, write_parcels
from weedmap.synth.generator import generate_dataset
from weedmap.synth.signatures import Separation

OBSERVATION_FILE = "observations.csv"
PARCEL_FILE = "parcels.csv"

logger = logging.getLogger(__name__)


def parse_counts(values: Tuple[str, ...]) -> Optional[Dict[WeedClass, int]]:
    """Parse repeated `CLASS=N` options into class counts, None when no option is given.

    Throws: `ConfigError` if an option is not of the form `CLASS=N`.
    """
    if len(values) == 0:
        return None
    counts = dict()
    for value in values:
        name, sep, count = value.partition("=")
        if sep == "" or not count.strip().isdigit():
            raise ConfigError(f"Invalid class count '{value}', expected CLASS=N")
        try:
            counts[parse_weed_class(name)] = int(count)
        except MalformedInput as error:
            raise ConfigError(str(error))
    return counts


@click.command()
@click.option("-c", "--config", type=click.Path(exists=True, dir_okay=False), default=None, help="YAML file describing the synthetic dataset")
@click.option("-o", "--out-dir", type=str, required=True, help="Directory where observations.csv and parcels.csv are written")
@click.option("--sensor", type=click.Choice([s.value for s in SensorId], case_sensitive=False), default=None, help="Sensor observing the parcels [default: S2]")
@click.option("--seed", type=int, default=None, help="Master seed of the generator [default: 0]")
@click.option("--separation", type=click.Choice([s.value for s in Separation]), default=None, help="Separation of the class signatures [default: high]")
@click.option("--noise-sd", type=float, default=None, help="Standard deviation of the reflectance noise [default: 0.02]")
@click.option("--cloud-rate", type=float, default=None, help="Fraction of cloudy acquisition dates [default: 0.2]")
@click.option("--revisit-days", type=int, default=None, help="Days between two acquisitions [default: revisit time of the sensor]")
@click.option("--count", "counts", type=str, multiple=True, help="Number of parcels of a class, as CLASS=N (repeatable, unlisted classes get no parcel) [default: survey counts]")
@log_level_option
@exit_on_error
def cmd_synth(config, out_dir, sensor, seed, separation, noise_sd, cloud_rate, revisit_days, counts, log_level):
    """Generate a labeled synthetic dataset of orchard parcels and their spectral observations."""
    install_logger(log_level)
    overrides = {
        "sensor": sensor,
        "seed": seed,
        "separation": separation,
        "noise_sd": noise_sd,
        "cloud_rate": cloud_rate,
        "revisit_days": revisit_days,
        "class_counts": parse_counts(counts)
    }
    cfg = load_synth_config(config, overrides)
    prepare_out_dir(out_dir)
    observations, parcels = generate_dataset(cfg)
    write_observations(os.path.join(out_dir, OBSERVATION_FILE), observations, get_sensor(cfg.sensor))
    write_parcels(os.path.join(out_dir, PARCEL_FILE), parcels)
    logger.info(f"Synthetic {cfg.sensor.value} dataset written to {out_dir}")
