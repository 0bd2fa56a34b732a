# summary_test.py
# MIT License 2026
import pytest

from weedmap.core.classes import WeedClass
from weedmap.eval.summary import class_counts_by_orchard, render_summary
from weedmap.exceptions import UnsupportedFormat
from weedmap.io.observations import ManifestEntry
from weedmap.synth.generator import SynthConfig, plan_parcels

MO, TL, CS, NP = WeedClass


def test_default_survey_counts():
    entries = [ManifestEntry(p.parcel_id, p.orchard_type, p.weed_class) for p in plan_parcels(SynthConfig())]
    frame = class_counts_by_orchard(entries)
    assert frame.loc["Total"].tolist() == [141, 33, 31, 27, 232]
    assert frame.index[-1] == "Total"
    assert "unlabeled" not in frame.columns


def test_unlabeled_column():
    entries = [
        ManifestEntry("A", "apple", MO),
        ManifestEntry("B", "pear", None),
        ManifestEntry("C", "apple", NP),
        ManifestEntry("D", "apple", MO)
    ]
    frame = class_counts_by_orchard(entries)
    assert list(frame.index) == ["apple", "pear", "Total"]
    assert list(frame.columns) == ["Mowing", "Tillage", "ChemicalSpraying", "NoPractice", "unlabeled", "total"]
    assert frame.loc["apple"].tolist() == [2, 0, 0, 1, 0, 3]
    assert frame.loc["pear"].tolist() == [0, 0, 0, 0, 1, 1]


def test_render_summary():
    frame = class_counts_by_orchard([ManifestEntry("A", "apple", TL)])
    lines = render_summary(frame, "csv").splitlines()
    assert lines[0] == "orchard_type,Mowing,Tillage,ChemicalSpraying,NoPractice,total"
    assert lines[1] == "apple,0,1,0,0,1"
    assert "apple" in render_summary(frame, "text")
    with pytest.raises(UnsupportedFormat):
        render_summary(frame, "json")
