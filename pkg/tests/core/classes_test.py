# classes_test.py
# MIT License 2026
import pytest

from weedmap.core.classes import (ORCHARD_COUNTS, SURVEY_CLASS_COUNTS,
                                  WeedClass, parse_weed_class)
from weedmap.exceptions import MalformedInput

fixtures = [
    ("Mowing", WeedClass.Mowing),
    ("tillage", WeedClass.Tillage),
    ("Chemical spraying", WeedClass.ChemicalSpraying),
    ("chemical-spraying", WeedClass.ChemicalSpraying),
    ("ChemicalSpraying", WeedClass.ChemicalSpraying),
    ("NP", WeedClass.NoPractice),
    ("mo", WeedClass.Mowing),
    (2, WeedClass.ChemicalSpraying),
    ("3", WeedClass.NoPractice),
    (WeedClass.Tillage, WeedClass.Tillage)
]


@pytest.mark.parametrize("value,expected", fixtures)
def test_parse_weed_class(value, expected):
    assert parse_weed_class(value) == expected


@pytest.mark.parametrize("value", ["Grazing", "", 4, -1, "XX"])
def test_parse_unknown_class(value):
    with pytest.raises(MalformedInput):
        parse_weed_class(value)


def test_ordinal_order():
    assert [c.code for c in WeedClass] == ["MO", "TL", "CS", "NP"]
    assert sorted(WeedClass) == list(WeedClass)


def test_survey_totals():
    assert SURVEY_CLASS_COUNTS == {WeedClass.Mowing: 141, WeedClass.Tillage: 33, WeedClass.ChemicalSpraying: 31, WeedClass.NoPractice: 27}
    assert sum(sum(row.values()) for row in ORCHARD_COUNTS.values()) == 232
