# summary.py
# MIT License 2026
from collections import OrderedDict
from typing import Dict, Sequence

import pandas as pd

from weedmap.core.classes import WeedClass
from weedmap.exceptions import UnsupportedFormat
from weedmap.io.observations import ManifestEntry

SUMMARY_FORMATS = ("text", "csv")
TOTAL_ROW = "Total"
UNLABELED = "unlabeled"


def class_counts_by_orchard(entries: Sequence[ManifestEntry]) -> pd.DataFrame:
    """Count the weed management classes of every orchard type of a parcel manifest.

    Orchard types appear in order of first occurrence, followed by a total row. Unlabeled parcels
    are counted in their own column, which is omitted when every parcel is labeled.

    Example:
      >>> class_counts_by_orchard(read_manifest("parcels.csv")).loc["Total"].tolist()
      [141, 33, 31, 27, 232]
    """
    counts: Dict[str, Dict[str, int]] = OrderedDict()
    columns = [c.name for c in WeedClass]
    has_unlabeled = any(entry.label is None for entry in entries)
    if has_unlabeled:
        columns.append(UNLABELED)
    for entry in entries:
        row = counts.setdefault(entry.orchard_type, OrderedDict((column, 0) for column in columns))
        row[entry.label.name if entry.label is not None else UNLABELED] += 1
    frame = pd.DataFrame.from_dict(counts, orient="index", columns=columns)
    frame = frame.reindex(columns=columns, fill_value=0).astype(int)
    frame.loc[TOTAL_ROW] = frame.sum(axis=0)
    frame["total"] = frame.sum(axis=1)
    frame.index.name = "orchard_type"
    return frame


def render_summary(frame: pd.DataFrame, fmt: str = "text") -> str:
    """Render a class count table as aligned text or CSV.

    Throws: `UnsupportedFormat` for any other format.
    """
    if fmt == "csv":
        return frame.to_csv(lineterminator="\n")
    if fmt == "text":
        return frame.to_string() + "\n"
    raise UnsupportedFormat(f"Unsupported summary format '{fmt}', expected one of {SUMMARY_FORMATS}")
