# metrics.py
# MIT License 2026
from collections import OrderedDict
from dataclasses import dataclass
from typing import Dict, Mapping

from weedmap.core.classes import WeedClass
from weedmap.eval.confusion import ConfusionMatrix
from weedmap.exceptions import ZeroSupport


@dataclass(frozen=True)
class ClassMetrics:
    """Precision, recall and F1 score of one class, with its support (number of true parcels)"""
    precision: float
    recall: float
    f1: float
    support: int


def _ratio(numerator: float, denominator: float) -> float:
    """A ratio whose zero denominator yields 0"""
    return float(numerator) / float(denominator) if denominator > 0 else 0.0


def per_class_metrics(cm: ConfusionMatrix) -> Dict[WeedClass, ClassMetrics]:
    """Compute the precision, recall and F1 score of every class.

    Precision is the diagonal count over the column sum, recall the diagonal count over the row
    sum, and F1 their harmonic mean. A zero denominator yields 0, so a class that is never
    predicted and never correct gets 0 everywhere.

    Returns: The metrics of every class, in ordinal order.
    """
    metrics = OrderedDict()
    supports = cm.supports
    predicted = cm.predicted
    for c in WeedClass:
        hits = cm.counts[int(c), int(c)]
        precision = _ratio(hits, predicted[int(c)])
        recall = _ratio(hits, supports[int(c)])
        f1 = _ratio(2 * precision * recall, precision + recall)
        metrics[c] = ClassMetrics(precision, recall, f1, int(supports[int(c)]))
    return metrics


def weighted_f1(per_class: Mapping[WeedClass, ClassMetrics]) -> float:
    """Average the per-class F1 scores, weighted by class support.

    Throws: `ZeroSupport` if no class has any support.

    Example:
      >>> weighted_f1({MO: ClassMetrics(0, 0, 0.72, 29), TL: ClassMetrics(0, 0, 0.5, 7), ...})  # with (0.31, 7), (0.25, 6)
      0.5724...
    """
    return weighted_average(per_class, "f1")


def weighted_average(per_class: Mapping[WeedClass, ClassMetrics], metric: str) -> float:
    """Average a per-class metric ("precision", "recall" or "f1"), weighted by class support"""
    total = sum(m.support for m in per_class.values())
    if total == 0:
        raise ZeroSupport("Cannot compute a support-weighted average when no class has any support")
    return sum(m.support * getattr(m, metric) for m in per_class.values()) / total


def accuracy(cm: ConfusionMatrix) -> float:
    return _ratio(cm.counts.trace(), cm.total)
