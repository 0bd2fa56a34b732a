# exceptions.py
# MIT License 2026
from datetime import date
from typing import Optional


class WeedmapError(Exception):
    """Base class of every error raised by the weedmap pipeline"""
    exit_code = 1


class ConfigError(WeedmapError):
    """Raised when the configuration of a run is invalid"""
    exit_code = 2


class DataValidationError(WeedmapError):
    """Raised when input data violates the record or schema invariants"""
    exit_code = 3


class TrainingError(WeedmapError):
    """Raised when a model cannot be trained or tuned on the given data"""
    exit_code = 4


# configuration errors

class UnknownSensor(ConfigError):
    """Raised when a sensor identifier is not registered"""
    pass


class EmptyWindow(ConfigError):
    """Raised when an observation window or a time grid is empty"""
    pass


class FractionOutOfRange(ConfigError):
    """Raised when a fraction parameter falls outside of its allowed range"""
    pass


class UnsupportedFormat(ConfigError):
    """Raised when a report format is not supported"""
    pass


class UnknownModelKind(ConfigError):
    """Raised when no learner is registered under a model kind"""
    pass


class InvalidHyperparameter(ConfigError):
    """Raised when a hyperparameter set contains an unknown or invalid value"""
    pass


# data validation errors

class ObservationError(DataValidationError):
    """An invalid spectral observation.

    Args:
      * field: Name of the offending field.
      * pixel_id: Pixel of the observation.
      * obs_date: Date of the observation.
      * detail: Human readable description of the violation.
    """

    def __init__(self, field: str, pixel_id: Optional[str], obs_date: Optional[date], detail: str):
        super(ObservationError, self).__init__(f"Invalid observation (pixel '{pixel_id}', date {obs_date}), field '{field}': {detail}")
        self.field = field
        self.pixel_id = pixel_id
        self.date = obs_date


class BandCountMismatch(ObservationError):
    """Raised when the number of reflectances differs from the sensor band count"""
    pass


class NegativeReflectance(ObservationError):
    """Raised when a reflectance value is negative"""
    pass


class NonFiniteValue(ObservationError):
    """Raised when a reflectance value is NaN or infinite"""
    pass


class CloudFractionOutOfRange(ObservationError):
    """Raised when a cloud fraction is not in [0, 1]"""
    pass


class SensorMismatch(DataValidationError):
    """Raised when input data was produced by another sensor than the expected one"""
    pass


class MalformedInput(DataValidationError):
    """Raised when an input file or value cannot be parsed"""
    pass


class EmptySeries(DataValidationError):
    """Raised when a time series has no observation left to interpolate"""
    pass


class NonAscendingDates(DataValidationError):
    """Raised when the dates of a time series are not strictly ascending"""
    pass


class LengthMismatch(DataValidationError):
    """Raised when two sequences that must be aligned have different lengths"""
    pass


class NonFiniteInput(DataValidationError):
    """Raised when a numerical input is NaN or infinite"""
    pass


class GridMismatch(DataValidationError):
    """Raised when band series of one pixel do not share the same time grid"""
    pass


class EmptyParcel(DataValidationError):
    """Raised when a parcel has no pixel to aggregate"""
    pass


class SchemaMismatch(DataValidationError):
    """Raised when feature vectors do not share the expected feature schema"""
    pass


class EmptyInput(DataValidationError):
    """Raised when an evaluation receives no prediction"""
    pass


class ZeroSupport(DataValidationError):
    """Raised when a weighted average is requested over classes without support"""
    pass


class UnsupportedModelVersion(DataValidationError):
    """Raised when a model file uses an unknown format version"""
    pass


# training errors

class ClassTooSmall(TrainingError):
    """Raised when a class has fewer than two rows and cannot be split"""
    pass


class ClassSmallerThanFolds(TrainingError):
    """Raised when a class has fewer rows than cross-validation folds"""
    pass


class EmptyTrainingSet(TrainingError):
    """Raised when a learner receives no training row"""
    pass


class KTooLarge(TrainingError):
    """Raised when a KNN model asks for more neighbours than training rows"""
    pass
