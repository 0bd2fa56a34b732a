# classes.py
# MIT License 2026
from enum import IntEnum
from typing import Dict, Union

from weedmap.exceptions import MalformedInput


class WeedClass(IntEnum):
    """Weed management practices applied to an orchard parcel.

    The ordinal order is the axis order of every confusion matrix and report,
    and the direction in which every vote or argmax tie is broken.
    """
    Mowing = 0
    Tillage = 1
    ChemicalSpraying = 2
    NoPractice = 3

    @property
    def code(self) -> str:
        """Two-letter code, as used in result tables (MO, TL, CS, NP)"""
        return _CODES[self]

    @property
    def label(self) -> str:
        """Human readable name of the practice"""
        return _LABELS[self]


_CODES = {
    WeedClass.Mowing: "MO",
    WeedClass.Tillage: "TL",
    WeedClass.ChemicalSpraying: "CS",
    WeedClass.NoPractice: "NP"
}

_LABELS = {
    WeedClass.Mowing: "Mowing",
    WeedClass.Tillage: "Tillage",
    WeedClass.ChemicalSpraying: "Chemical spraying",
    WeedClass.NoPractice: "No practice"
}

N_CLASSES = len(WeedClass)


def parse_weed_class(value: Union[str, int, WeedClass]) -> WeedClass:
    """Parse a weed management class from its name, label, code or ordinal.

    Argument: The value to parse, case-insensitive.

    Returns: The corresponding WeedClass.

    Throws: `MalformedInput` if the value does not denote any class.

    Example:
      >>> parse_weed_class("chemical spraying")
      <WeedClass.ChemicalSpraying: 2>
      >>> parse_weed_class("NP")
      <WeedClass.NoPractice: 3>
    """
    if isinstance(value, WeedClass):
        return value
    if isinstance(value, int):
        try:
            return WeedClass(value)
        except ValueError:
            raise MalformedInput(f"Unknown weed management class ordinal: {value}")
    key = str(value).strip().lower().replace("-", " ").replace("_", " ")
    for c in WeedClass:
        if key in (c.name.lower(), c.label.lower(), c.code.lower(), c.label.lower().replace(" ", "")):
            return c
    if key.isdigit():
        return parse_weed_class(int(key))
    raise MalformedInput(f"Unknown weed management class: '{value}'")


OTHER_ORCHARD = "other"

# Count of weed management methods per orchard type, as surveyed in Thessaly (May-August 2024)
ORCHARD_COUNTS: Dict[str, Dict[WeedClass, int]] = {
    "Apricots": {WeedClass.Mowing: 29, WeedClass.Tillage: 1, WeedClass.ChemicalSpraying: 1, WeedClass.NoPractice: 0},
    "Peaches": {WeedClass.Mowing: 29, WeedClass.Tillage: 2, WeedClass.ChemicalSpraying: 6, WeedClass.NoPractice: 2},
    "Almonds": {WeedClass.Mowing: 42, WeedClass.Tillage: 25, WeedClass.ChemicalSpraying: 18, WeedClass.NoPractice: 7},
    "Pears": {WeedClass.Mowing: 11, WeedClass.Tillage: 0, WeedClass.ChemicalSpraying: 1, WeedClass.NoPractice: 1},
    "Olives": {WeedClass.Mowing: 27, WeedClass.Tillage: 5, WeedClass.ChemicalSpraying: 5, WeedClass.NoPractice: 16},
    "Pistachios": {WeedClass.Mowing: 3, WeedClass.Tillage: 0, WeedClass.ChemicalSpraying: 0, WeedClass.NoPractice: 1}
}

ORCHARD_TYPES = tuple(ORCHARD_COUNTS.keys()) + (OTHER_ORCHARD,)

# class totals of the survey (141/33/31/27)
SURVEY_CLASS_COUNTS: Dict[WeedClass, int] = {c: sum(row[c] for row in ORCHARD_COUNTS.values()) for c in WeedClass}
