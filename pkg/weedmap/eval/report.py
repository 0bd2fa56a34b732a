# report.py
# MIT License 2026
import json
from collections import OrderedDict
from dataclasses import dataclass, field
from io import StringIO
from typing import Any, Dict, Mapping, Optional, Sequence

import pandas as pd

from weedmap.core.classes import WeedClass, parse_weed_class
from weedmap.eval.confusion import ConfusionMatrix, confusion_matrix
from weedmap.eval.metrics import (ClassMetrics, accuracy, per_class_metrics,
                                  weighted_average, weighted_f1)
from weedmap.exceptions import MalformedInput, UnsupportedFormat

REPORT_FORMATS = ("text", "json", "csv")
CSV_COLUMNS = ["class", "precision", "recall", "f1", "support"]
# label of the support-weighted row of the CSV report
WEIGHTED_ROW = "weighted"


@dataclass(frozen=True)
class EvaluationReport:
    """Evaluation of a model on a test set.

    Args:
      * confusion: The confusion matrix, if known.
      * per_class: Precision, recall, F1 and support of every class, in ordinal order.
      * weighted_f1: Support-weighted mean of the per-class F1 scores.
      * metadata: Description of the evaluated model (model kind, hyperparameters, seed, dataset).
    """
    confusion: Optional[ConfusionMatrix]
    per_class: Dict[WeedClass, ClassMetrics]
    weighted_f1: float
    metadata: Dict[str, Any] = field(default_factory=dict)


def evaluate(y_true: Sequence[WeedClass], y_pred: Sequence[WeedClass], metadata: Optional[Mapping[str, Any]] = None) -> EvaluationReport:
    """Build the evaluation report of a set of predictions.

    Throws: `LengthMismatch`, `EmptyInput`.
    """
    cm = confusion_matrix(y_true, y_pred)
    metrics = per_class_metrics(cm)
    return EvaluationReport(cm, metrics, weighted_f1(metrics), dict(metadata) if metadata is not None else dict())


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _render_text(report: EvaluationReport) -> str:
    lines = list()
    if len(report.metadata) > 0:
        for key in sorted(report.metadata):
            lines.append(f"{key}: {report.metadata[key]}")
        lines.append("")
    lines.append(f"{'Class':<20}{'Precision':>10}{'Recall':>10}{'F1':>10}{'Support':>10}")
    for c, m in report.per_class.items():
        lines.append(f"{c.label:<20}{_fmt(m.precision):>10}{_fmt(m.recall):>10}{_fmt(m.f1):>10}{m.support:>10}")
    total = sum(m.support for m in report.per_class.values())
    lines.append(f"{'Weighted F1':<20}{'':>10}{'':>10}{_fmt(report.weighted_f1):>10}{total:>10}")
    if report.confusion is not None:
        lines.append("")
        lines.append(f"Confusion matrix (rows: true class, columns: predicted class), accuracy {_fmt(accuracy(report.confusion))}")
        width = max(4, len(str(report.confusion.counts.max())) + 2)
        lines.append(" " * 4 + "".join(f"{c.code:>{width}}" for c in WeedClass))
        for c in WeedClass:
            lines.append(f"{c.code:<4}" + "".join(f"{report.confusion.count(c, p):>{width}}" for p in WeedClass))
    return "\n".join(lines) + "\n"


def _render_json(report: EvaluationReport) -> str:
    document = {
        "confusion": report.confusion.to_list() if report.confusion is not None else None,
        "per_class": OrderedDict((c.name, {"precision": m.precision, "recall": m.recall, "f1": m.f1, "support": m.support}) for c, m in report.per_class.items()),
        "weighted_f1": report.weighted_f1,
        "metadata": report.metadata
    }
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def _render_csv(report: EvaluationReport) -> str:
    rows = [[c.name, m.precision, m.recall, m.f1, m.support] for c, m in report.per_class.items()]
    rows.append([
        WEIGHTED_ROW,
        weighted_average(report.per_class, "precision"),
        weighted_average(report.per_class, "recall"),
        report.weighted_f1,
        sum(m.support for m in report.per_class.values())
    ])
    return pd.DataFrame(rows, columns=CSV_COLUMNS).to_csv(index=False, lineterminator="\n")


def render_report(report: EvaluationReport, fmt: str = "text") -> str:
    """Serialize an evaluation report.

    Args:
      * report: The report to serialize.
      * fmt: "text" for a human readable table of per-class metrics followed by the confusion
        matrix (values rounded to 2 decimals), "json" or "csv" for lossless files.

    Returns: The serialized report.

    Throws: `UnsupportedFormat` if the format is unknown.
    """
    if fmt == "text":
        return _render_text(report)
    elif fmt == "json":
        return _render_json(report)
    elif fmt == "csv":
        return _render_csv(report)
    raise UnsupportedFormat(f"Unsupported report format '{fmt}', expected one of {REPORT_FORMATS}")


def read_report(text: str, fmt: str = "json") -> EvaluationReport:
    """Parse a report serialized by `render_report` in json or csv.

    A CSV report does not hold the confusion matrix nor the metadata, which are left empty.

    Throws: `UnsupportedFormat` for text reports, `MalformedInput` if the report cannot be parsed.
    """
    if fmt == "json":
        try:
            document = json.loads(text)
            per_class = OrderedDict()
            for c in WeedClass:
                m = document["per_class"][c.name]
                per_class[c] = ClassMetrics(m["precision"], m["recall"], m["f1"], m["support"])
            confusion = ConfusionMatrix(document["confusion"]) if document["confusion"] is not None else None
            return EvaluationReport(confusion, per_class, document["weighted_f1"], document["metadata"])
        except (ValueError, KeyError, TypeError) as error:
            raise MalformedInput(f"Cannot parse JSON report: {error}")
    elif fmt == "csv":
        try:
            frame = pd.read_csv(StringIO(text), dtype={"class": str}, float_precision="round_trip")
            if list(frame.columns) != CSV_COLUMNS:
                raise MalformedInput(f"Unexpected CSV report header {list(frame.columns)}")
            per_class = dict()
            score = None
            for row in frame.itertuples(index=False):
                if row[0] == WEIGHTED_ROW:
                    score = float(row.f1)
                else:
                    per_class[parse_weed_class(row[0])] = ClassMetrics(float(row.precision), float(row.recall), float(row.f1), int(row.support))
            if score is None or len(per_class) != len(WeedClass):
                raise MalformedInput("A CSV report needs one row per class and a weighted row")
            return EvaluationReport(None, OrderedDict((c, per_class[c]) for c in WeedClass), score)
        except (ValueError, KeyError, pd.errors.ParserError) as error:
            raise MalformedInput(f"Cannot parse CSV report: {error}")
    raise UnsupportedFormat(f"Cannot read reports in format '{fmt}', expected json or csv")


def render_confusion_csv(cm: ConfusionMatrix) -> str:
    """Serialize a confusion matrix as CSV, with a header row and a header column of class names.

    Example:
      >>> print(render_confusion_csv(cm))
      true\\predicted,Mowing,Tillage,ChemicalSpraying,NoPractice
      Mowing,1,1,0,0
      ...
    """
    frame = pd.DataFrame(cm.to_list(), columns=[c.name for c in WeedClass])
    frame.insert(0, "true\\predicted", [c.name for c in WeedClass])
    return frame.to_csv(index=False, lineterminator="\n")


def render_comparison(reports: Mapping[str, EvaluationReport]) -> str:
    """Render the per-class metrics of several models side by side, values rounded to 2 decimals.

    Args:
      * reports: Evaluation reports by model name, in display order.

    Returns: A text table with one row per class, and precision, recall and F1 columns per model.
    """
    names = list(reports.keys())
    header = f"{'Class':<20}" + "".join(f"{name.upper():>8}{'':>16}" for name in names)
    subheader = f"{'':<20}" + "".join(f"{'P':>8}{'R':>8}{'F1':>8}" for _ in names)
    lines = [header, subheader]
    for c in WeedClass:
        cells = "".join(f"{_fmt(r.per_class[c].precision):>8}{_fmt(r.per_class[c].recall):>8}{_fmt(r.per_class[c].f1):>8}" for r in reports.values())
        lines.append(f"{c.label:<20}{cells}")
    lines.append(f"{'Weighted F1':<20}" + "".join(f"{'':>8}{'':>8}{_fmt(r.weighted_f1):>8}" for r in reports.values()))
    return "\n".join(lines) + "\n"
