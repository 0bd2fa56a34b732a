# config.py
# MIT License 2026
import logging
import os
from datetime import date
from typing import Any, Dict, List, Mapping, Optional, Type, TypeVar

from pydantic import BaseModel, Field, ValidationError, root_validator, validator
from yaml import FullLoader, YAMLError, load

from weedmap.core.sensors import SensorId, get_sensor
from weedmap.exceptions import (ConfigError, EmptyWindow, FractionOutOfRange,
                                WeedmapError)
from weedmap.learn.split import SPLIT_KEYS
from weedmap.preprocess.clouds import DEFAULT_CLOUD_THRESHOLD
from weedmap.preprocess.grid import DEFAULT_STEP_DAYS
from weedmap.synth.generator import SynthConfig

# section added to saved configurations to describe the run that produced them
RUN_SECTION = "run"

Model = TypeVar("Model", bound=BaseModel)

logger = logging.getLogger(__name__)


class RunConfig(BaseModel):
    """Configuration of a training and evaluation run"""
    sensor: Optional[SensorId] = Field(None, description="Sensor of the observations, detected from the observation file when omitted.")
    window_start: date = Field(date(2024, 5, 1), description="First day of the observation window.")
    window_end: date = Field(date(2024, 8, 31), description="Last day of the observation window.")
    grid_step: int = Field(DEFAULT_STEP_DAYS, description="Days between two dates of the interpolation grid.")
    cloud_threshold: float = Field(DEFAULT_CLOUD_THRESHOLD, description="Maximum cloud fraction of a retained observation.")
    test_fraction: float = Field(0.2, description="Fraction of every class reserved for the test set.")
    undersample_fraction: float = Field(0.006, description="Fraction of the majority class removed from the training set.")
    folds: int = Field(5, description="Number of cross-validation folds.")
    model: str = Field("rf", description="Kind of the learner: rf, gbt, knn or a custom learner.")
    grid: Optional[List[Dict[str, Any]]] = Field(None, description="Hyperparameter sets to cross-validate, defaults to the grid of the learner.")
    seed: int = Field(42, description="Master seed of the run.")
    observations: Optional[str] = Field(None, description="Path of the observation file.")
    parcels: Optional[str] = Field(None, description="Path of the parcel manifest.")
    out_dir: Optional[str] = Field(None, description="Directory where the outputs are written.")
    drop_bands: List[str] = Field(list(), description="Band codes excluded from the features.")
    orchard_feature: bool = Field(False, description="Use the orchard type as a one-hot feature.")
    split_key: str = Field("random", description="How test parcels are drawn: random or parcel_hash.")
    n_jobs: int = Field(1, description="Number of parallel jobs.")
    learners: List[Dict[str, Any]] = Field(list(), description="Custom learners, declared with name, path, learner and required.")

    class Config:
        frozen = True
        extra = "forbid"

    @validator("sensor", pre=True)
    def _parse_sensor(cls, value):
        return get_sensor(value).id if value is not None else None

    @validator("model")
    def _lower_model(cls, value):
        return value.lower()

    @validator("cloud_threshold")
    def _check_threshold(cls, value):
        if not 0 <= value <= 1:
            raise FractionOutOfRange(f"The cloud threshold must be in [0, 1], got {value}")
        return value

    @validator("test_fraction")
    def _check_test_fraction(cls, value):
        if not 0 < value < 1:
            raise FractionOutOfRange(f"The test fraction must be in (0, 1), got {value}")
        return value

    @validator("undersample_fraction")
    def _check_undersample_fraction(cls, value):
        if not 0 <= value < 1:
            raise FractionOutOfRange(f"The undersampling fraction must be in [0, 1), got {value}")
        return value

    @validator("folds")
    def _check_folds(cls, value):
        if value < 2:
            raise ConfigError(f"Cross-validation needs at least 2 folds, got {value}")
        return value

    @validator("grid_step")
    def _check_step(cls, value):
        if value < 1:
            raise EmptyWindow(f"The grid step must be at least one day, got {value}")
        return value

    @validator("grid")
    def _check_grid(cls, value):
        if value is not None and len(value) == 0:
            raise ConfigError("The hyperparameter grid cannot be empty")
        return value

    @validator("split_key")
    def _check_split_key(cls, value):
        if value not in SPLIT_KEYS:
            raise ConfigError(f"Unknown split key '{value}', expected one of {SPLIT_KEYS}")
        return value

    @validator("n_jobs")
    def _check_jobs(cls, value):
        if value == 0:
            raise ConfigError("The number of parallel jobs cannot be 0")
        return value

    @root_validator(skip_on_failure=True)
    def _check_run(cls, values):
        if values["window_end"] <= values["window_start"]:
            raise EmptyWindow(f"The observation window is empty: it starts on {values['window_start']} and ends on {values['window_end']}")
        inputs = [os.path.abspath(p) for p in (values["observations"], values["parcels"]) if p is not None]
        if len(inputs) == 2 and inputs[0] == inputs[1]:
            raise ConfigError("The observation file and the parcel manifest must be different files")
        if values["out_dir"] is not None and os.path.abspath(values["out_dir"]) in inputs:
            raise ConfigError("The output directory cannot be one of the input files")
        return values

    def to_document(self) -> Dict[str, Any]:
        """Get the configuration as plain YAML values, loadable again by `load_config`"""
        document = self.dict()
        document["sensor"] = self.sensor.value if self.sensor is not None else None
        document["window_start"] = self.window_start.isoformat()
        document["window_end"] = self.window_end.isoformat()
        return document


def build_config(model: Type[Model], values: Mapping[str, Any]) -> Model:
    """Validate a configuration mapping into a configuration model.

    Throws: `ConfigError` if the mapping is invalid.
    """
    try:
        return model(**values)
    except ValidationError as error:
        raise ConfigError(f"Invalid configuration: {error}")
    except WeedmapError:
        raise
    except (TypeError, ValueError) as error:
        raise ConfigError(f"Invalid configuration: {error}")


def read_config_file(config_file: str) -> Dict[str, Any]:
    """Read a flat YAML configuration file.

    The section describing the run that saved the file, if any, is ignored.

    Throws: `ConfigError` if the file cannot be read or is not a YAML mapping.
    """
    try:
        with open(config_file, "r", encoding="utf-8") as file:
            config = load(file, Loader=FullLoader)
    except (OSError, YAMLError) as error:
        raise ConfigError(f"Cannot read configuration file {config_file}: {error}")
    if config is None:
        return dict()
    if not isinstance(config, dict):
        raise ConfigError(f"The configuration file {config_file} must contain a mapping of keys to values")
    config.pop(RUN_SECTION, None)
    return config


def _merge(config_file: Optional[str], overrides: Optional[Mapping[str, Any]]) -> Dict[str, Any]:
    values = read_config_file(config_file) if config_file is not None else dict()
    if overrides is not None:
        values.update({key: value for key, value in overrides.items() if value is not None})
    return values


def load_config(config_file: Optional[str] = None, overrides: Optional[Mapping[str, Any]] = None) -> RunConfig:
    """Load the configuration of a run from a YAML file and command-line overrides.

    Args:
      * config_file: Path to a YAML configuration file, or None to start from the defaults.
      * overrides: Values that replace the ones of the file; None values are ignored.

    Returns: The validated run configuration.

    Throws: `ConfigError` if the configuration is invalid.

    Example:
      >>> cfg = load_config("config_examples/run.yaml", {"model": "knn"})
      >>> cfg.grid_step
      10
    """
    return build_config(RunConfig, _merge(config_file, overrides))


def load_synth_config(config_file: Optional[str] = None, overrides: Optional[Mapping[str, Any]] = None) -> SynthConfig:
    """Load the configuration of a synthetic dataset, see `load_config`"""
    return build_config(SynthConfig, _merge(config_file, overrides))
