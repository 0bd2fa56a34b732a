# sensors.py
# MIT License 2026
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Tuple, Union

from weedmap.exceptions import SensorMismatch, UnknownSensor


class SensorId(str, Enum):
    """Identifiers of the registered multispectral sensors"""
    S2 = "S2"
    PS8B = "PS8B"


@dataclass(frozen=True)
class BandDescriptor:
    """A spectral band of a sensor.

    Args:
      * code: Short identifier of the band, used as column name in input files.
      * name: Human readable description of the band.
      * index: 0-based position of the band in the sensor registry.
    """
    code: str
    name: str
    index: int


class Sensor(object):
    """A multispectral sensor, described by its ordered band registry.

    Args:
      * sensor_id: Identifier of the sensor.
      * bands: Ordered (code, name) pairs of the sensor bands.
      * nir_code: Code of the near-infrared band used to compute NDVI.
      * red_code: Code of the red band used to compute NDVI.
      * revisit_days: Days between two successive observations of a location.
      * pixel_size: Ground sampling distance, in meters.
    """

    def __init__(self, sensor_id: SensorId, bands: Iterable[Tuple[str, str]], nir_code: str, red_code: str, revisit_days: int, pixel_size: float):
        super(Sensor, self).__init__()
        self._id = sensor_id
        self._bands = tuple(BandDescriptor(code, name, index) for index, (code, name) in enumerate(bands))
        self._by_code = {band.code: band for band in self._bands}
        if len(self._by_code) != len(self._bands):
            raise ValueError(f"Duplicated band codes in the registry of sensor {sensor_id.value}")
        self._nir = self._by_code[nir_code].index
        self._red = self._by_code[red_code].index
        self._revisit_days = revisit_days
        self._pixel_size = pixel_size

    def __repr__(self) -> str:
        return f"<Sensor {self._id.value} ({len(self._bands)} bands)>"

    @property
    def id(self) -> SensorId:
        return self._id

    @property
    def bands(self) -> Tuple[BandDescriptor, ...]:
        return self._bands

    @property
    def band_codes(self) -> Tuple[str, ...]:
        return tuple(band.code for band in self._bands)

    @property
    def n_bands(self) -> int:
        return len(self._bands)

    @property
    def revisit_days(self) -> int:
        return self._revisit_days

    @property
    def pixel_size(self) -> float:
        return self._pixel_size

    @property
    def ndvi_band_pair(self) -> Tuple[int, int]:
        """Indices of the (NIR, red) bands used to compute NDVI"""
        return (self._nir, self._red)

    def index_of(self, code: str) -> int:
        """Get the position of a band in the registry, given its code"""
        if code not in self._by_code:
            raise KeyError(f"Sensor {self._id.value} has no band '{code}'")
        return self._by_code[code].index

    def code_of(self, index: int) -> str:
        """Get the code of a band, given its position in the registry"""
        return self._bands[index].code


SENTINEL_2 = Sensor(
    SensorId.S2,
    [
        ("B01", "Coastal Aerosol"),
        ("B02", "Blue"),
        ("B03", "Green"),
        ("B04", "Red"),
        ("B05", "Red Edge 1"),
        ("B06", "Red Edge 2"),
        ("B07", "Red Edge 3"),
        ("B08", "Near-Infrared (NIR)"),
        ("B8A", "Narrow Near-Infrared (Narrow NIR)"),
        ("B09", "Water Vapour"),
        ("B10", "Shortwave Infrared (Cirrus)"),
        ("B11", "Shortwave Infrared 1 (SWIR1)"),
        ("B12", "Shortwave Infrared 2 (SWIR2)")
    ],
    nir_code="B08", red_code="B04", revisit_days=5, pixel_size=10.0)

PLANETSCOPE_8B = Sensor(
    SensorId.PS8B,
    [
        ("B1", "Coastal Blue"),
        ("B2", "Blue"),
        ("B3", "Green I"),
        ("B4", "Green"),
        ("B5", "Yellow"),
        ("B6", "Red"),
        ("B7", "Red Edge"),
        ("B8", "Near Infrared (NIR)")
    ],
    nir_code="B8", red_code="B6", revisit_days=1, pixel_size=3.0)

SENSORS: Dict[SensorId, Sensor] = {
    SensorId.S2: SENTINEL_2,
    SensorId.PS8B: PLANETSCOPE_8B
}


def get_sensor(sensor_id: Union[str, SensorId, Sensor]) -> Sensor:
    """Get a registered sensor from its identifier (case-insensitive).

    Argument: Identifier of the sensor, e.g., "s2" or "PS8B".

    Returns: The registered Sensor.

    Throws: `UnknownSensor` if no sensor is registered under this identifier.
    """
    if isinstance(sensor_id, Sensor):
        sensor_id = sensor_id.id
    key = sensor_id.value if isinstance(sensor_id, SensorId) else str(sensor_id).strip().upper()
    for sid, sensor in SENSORS.items():
        if sid.value == key:
            return sensor
    raise UnknownSensor(f"Unknown sensor '{sensor_id}'. Registered sensors: {', '.join(s.value for s in SENSORS)}")


def ndvi_band_pair(sensor_id: Union[str, SensorId, Sensor]) -> Tuple[int, int]:
    """Get the (NIR, red) band indices used to compute the NDVI of a sensor.

    Example:
      >>> ndvi_band_pair("S2")
      (7, 3)
      >>> ndvi_band_pair("PS8B")
      (7, 5)
    """
    return get_sensor(sensor_id).ndvi_band_pair


def detect_sensor(band_codes: List[str]) -> Sensor:
    """Identify the sensor that produced a set of band columns.

    Argument: Band codes, in the order found in an input header.

    Returns: The registered sensor with exactly these band codes, in registry order.

    Throws: `SensorMismatch` if no registered sensor matches.
    """
    codes = tuple(band_codes)
    for sensor in SENSORS.values():
        if sensor.band_codes == codes:
            return sensor
    raise SensorMismatch(f"The band columns {list(codes)} do not match any registered sensor")
