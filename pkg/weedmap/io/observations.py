# observations.py
# MIT License 2026
import logging
import re
from dataclasses import dataclass
from datetime import date
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np
import pandas as pd

from weedmap.core.classes import WeedClass, parse_weed_class
from weedmap.core.records import ParcelRecord, SpectralObservation
from weedmap.core.sensors import Sensor, detect_sensor, get_sensor
from weedmap.core.validation import validate_observation
from weedmap.exceptions import MalformedInput, SensorMismatch

DEFAULT_SCALE = 10000
OBSERVATION_COLUMNS = ["pixel_id", "parcel_id", "date", "cloud_fraction"]
PARCEL_COLUMNS = ["parcel_id", "orchard_type", "label"]
PREDICTION_COLUMNS = ["parcel_id", "predicted_class"]

SCALE_HEADER = re.compile(r"^#\s*scale\s*=\s*([0-9]+)\s*$")

logger = logging.getLogger(__name__)


def _read_scale(path: str) -> int:
    with open(path, "r", encoding="utf-8") as file:
        first_line = file.readline().strip()
    match = SCALE_HEADER.match(first_line)
    if match is None or int(match.group(1)) == 0:
        raise MalformedInput(f"The observation file {path} must start with a '# scale=<N>' line, found '{first_line}'")
    return int(match.group(1))


def _parse_date(value: str, pixel_id: str) -> date:
    try:
        return date.fromisoformat(value)
    except (TypeError, ValueError):
        raise MalformedInput(f"Invalid ISO-8601 date '{value}' for pixel '{pixel_id}'")


def read_observations(path: str, sensor: Optional[Sensor] = None) -> Tuple[Sensor, List[SpectralObservation]]:
    """Read and validate an observation file.

    The file starts with a `# scale=N` line, followed by a CSV table with header
    `pixel_id,parcel_id,date,cloud_fraction,<band codes...>`, whose band values are
    digital numbers (reflectance times N).

    Args:
      * path: Path of the observation file.
      * sensor: The expected sensor. If None, the sensor is detected from the band columns.

    Returns: A tuple (`sensor`, `observations`), observations being in file order.

    Throws: `MalformedInput` if the file cannot be parsed, `SensorMismatch` if its bands are not
    those of the expected sensor, or any observation error raised by `validate_observation`.
    """
    scale = _read_scale(path)
    try:
        frame = pd.read_csv(path, skiprows=1, dtype={"pixel_id": str, "parcel_id": str, "date": str}, keep_default_na=False)
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as error:
        raise MalformedInput(f"Cannot parse observation file {path}: {error}")
    columns = list(frame.columns)
    if columns[:len(OBSERVATION_COLUMNS)] != OBSERVATION_COLUMNS:
        raise MalformedInput(f"The observation file {path} must start with columns {OBSERVATION_COLUMNS}, found {columns[:len(OBSERVATION_COLUMNS)]}")
    band_codes = columns[len(OBSERVATION_COLUMNS):]
    detected = detect_sensor(band_codes)
    if sensor is not None and detected.id != get_sensor(sensor).id:
        raise SensorMismatch(f"The observation file {path} holds {detected.id.value} bands, expected {get_sensor(sensor).id.value}")
    try:
        values = frame[band_codes].to_numpy(dtype=np.float64) / scale
        clouds = frame["cloud_fraction"].to_numpy(dtype=np.float64)
    except ValueError as error:
        raise MalformedInput(f"Non numerical value in observation file {path}: {error}")
    observations = list()
    dates: Dict[str, date] = dict()
    for k, (pixel_id, parcel_id, raw_date) in enumerate(zip(frame["pixel_id"], frame["parcel_id"], frame["date"])):
        if raw_date not in dates:
            dates[raw_date] = _parse_date(raw_date, pixel_id)
        obs = SpectralObservation(pixel_id, parcel_id, dates[raw_date], detected.id, tuple(values[k].tolist()), float(clouds[k]))
        observations.append(validate_observation(obs, detected))
    logger.info(f"Read {len(observations)} {detected.id.value} observations from {path}")
    return detected, observations


def _to_digital_numbers(values: np.ndarray, scale: int) -> np.ndarray:
    """Round reflectances times scale to the nearest integer, halves going up"""
    return np.floor(values * scale + 0.5).astype(np.int64)


def write_observations(path: str, observations: Sequence[SpectralObservation], sensor: Sensor, scale: int = DEFAULT_SCALE) -> None:
    """Write observations in the format read by `read_observations`.

    Reflectances are written as integer digital numbers, so identical observations always
    produce identical files.
    """
    sensor = get_sensor(sensor)
    frame = pd.DataFrame({
        "pixel_id": [obs.pixel_id for obs in observations],
        "parcel_id": [obs.parcel_id for obs in observations],
        "date": [obs.date.isoformat() for obs in observations],
        "cloud_fraction": [obs.cloud_fraction for obs in observations]
    }, columns=OBSERVATION_COLUMNS)
    matrix = np.array([obs.reflectances for obs in observations], dtype=np.float64).reshape(len(observations), sensor.n_bands)
    digital = _to_digital_numbers(matrix, scale)
    for band in sensor.bands:
        frame[band.code] = digital[:, band.index]
    with open(path, "w", encoding="utf-8", newline="\n") as file:
        file.write(f"# scale={scale}\n")
        frame.to_csv(file, index=False, lineterminator="\n")
    logger.info(f"Wrote {len(observations)} observations to {path}")


@dataclass(frozen=True)
class ManifestEntry:
    """A row of a parcel manifest"""
    parcel_id: str
    orchard_type: str
    label: Optional[WeedClass]


def read_manifest(path: str) -> List[ManifestEntry]:
    """Read the rows of a parcel manifest.

    The manifest is a CSV table with header `parcel_id,orchard_type,label`, where the label is the
    class name, code or ordinal, or empty for unlabeled parcels.

    Returns: The manifest rows, in file order.

    Throws: `MalformedInput` if the manifest cannot be parsed or lists a parcel twice.
    """
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as error:
        raise MalformedInput(f"Cannot parse parcel manifest {path}: {error}")
    if list(frame.columns) != PARCEL_COLUMNS:
        raise MalformedInput(f"The parcel manifest {path} must have columns {PARCEL_COLUMNS}, found {list(frame.columns)}")
    entries = list()
    seen = set()
    for parcel_id, orchard_type, raw_label in frame.itertuples(index=False):
        if parcel_id in seen:
            raise MalformedInput(f"Parcel '{parcel_id}' is listed twice in the parcel manifest {path}")
        seen.add(parcel_id)
        label = parse_weed_class(raw_label) if raw_label.strip() != "" else None
        entries.append(ManifestEntry(parcel_id, orchard_type, label))
    return entries


def read_parcels(path: str, observations: Iterable[SpectralObservation]) -> List[ParcelRecord]:
    """Read a parcel manifest and attach to every parcel the pixels found in the observations.

    Parcels without any observation are dropped with a warning, and observations of parcels
    missing from the manifest are ignored.

    Returns: The parcels, in manifest order.

    Throws: `MalformedInput` if the manifest cannot be parsed or lists a parcel twice.
    """
    entries = read_manifest(path)
    pixels: Dict[str, Set[str]] = dict()
    for obs in observations:
        pixels.setdefault(obs.parcel_id, set()).add(obs.pixel_id)
    parcels = list()
    for entry in entries:
        if entry.parcel_id not in pixels:
            logger.warning(f"Parcel '{entry.parcel_id}' has no observation and is dropped")
            continue
        parcels.append(ParcelRecord(entry.parcel_id, frozenset(pixels[entry.parcel_id]), entry.orchard_type, entry.label))
    orphans = set(pixels) - set(entry.parcel_id for entry in entries)
    if orphans:
        logger.warning(f"{len(orphans)} parcel(s) of the observations are not listed in the parcel manifest and are ignored")
    return parcels


def write_parcels(path: str, parcels: Sequence[ParcelRecord]) -> None:
    """Write a parcel manifest, in the given parcel order"""
    frame = pd.DataFrame([[p.parcel_id, p.orchard_type, p.label.name if p.label is not None else ""] for p in parcels], columns=PARCEL_COLUMNS)
    frame.to_csv(path, index=False, lineterminator="\n")
    logger.info(f"Wrote {len(parcels)} parcels to {path}")


def write_predictions(path: str, predictions: Sequence[Tuple[str, WeedClass]]) -> None:
    """Write (parcel_id, predicted class) pairs as a CSV file with header `parcel_id,predicted_class`"""
    frame = pd.DataFrame([[parcel_id, label.name] for parcel_id, label in predictions], columns=PREDICTION_COLUMNS)
    frame.to_csv(path, index=False, lineterminator="\n")
    logger.info(f"Wrote {len(predictions)} predictions to {path}")
