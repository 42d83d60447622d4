"""Ordinal-aware metrics: accuracy, per-class F1, Spearman rank correlation,
and the report that ties them together.

Spearman uses average ranks for ties and is an explicit error (not NaN) on
constant input; reports mark it absent in that case so a degenerate model
cannot silently look average.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .corpus import Label, label_to_score
from .errors import ConstantVectorError, EmptyError, LengthMismatchError
from .validation import N_CLASSES, check_labels


def accuracy(pred, gold) -> float:
    """Fraction of exact label matches."""
    pred = check_labels(pred)
    gold = check_labels(gold)
    if len(pred) != len(gold):
        raise LengthMismatchError(len(pred), len(gold))
    if len(pred) == 0:
        raise EmptyError()
    return float(np.mean(pred == gold))


def per_class_f1(pred, gold, cls) -> float:
    """F1 of one class; any zero denominator yields 0.0."""
    pred = check_labels(pred)
    gold = check_labels(gold)
    if len(pred) != len(gold):
        raise LengthMismatchError(len(pred), len(gold))
    c = int(cls)
    tp = int(np.sum((pred == c) & (gold == c)))
    fp = int(np.sum((pred == c) & (gold != c)))
    fn = int(np.sum((pred != c) & (gold == c)))
    if tp == 0:
        return 0.0
    precision = tp / (tp + fp)
    recall = tp / (tp + fn)
    return 2.0 * precision * recall / (precision + recall)


def average_ranks(values) -> np.ndarray:
    """1-based ranks; tied values share the mean of the positions they span."""
    values = np.asarray(values, dtype=np.float64)
    order = np.argsort(values, kind="stable")
    ranks = np.empty(len(values), dtype=np.float64)
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and values[order[j + 1]] == values[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


def spearman_rank(x, y) -> float:
    """Pearson correlation of average ranks, in [-1, 1]."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if len(x) != len(y):
        raise LengthMismatchError(len(x), len(y))
    if len(x) < 2:
        raise EmptyError()
    if np.all(x == x[0]):
        raise ConstantVectorError("first")
    if np.all(y == y[0]):
        raise ConstantVectorError("second")
    rx = average_ranks(x)
    ry = average_ranks(y)
    rx = rx - rx.mean()
    ry = ry - ry.mean()
    denom = np.sqrt(np.sum(rx**2) * np.sum(ry**2))
    return float(np.clip(np.sum(rx * ry) / denom, -1.0, 1.0))


@dataclass(frozen=True)
class EvaluationReport:
    """Metrics over one prediction run; confusion rows are gold, columns
    predicted, so accuracy is the trace over n."""

    accuracy: float
    f1_per_class: tuple[float, float, float]
    spearman: float | None
    confusion: tuple[tuple[int, ...], ...]
    n: int

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "accuracy": self.accuracy,
            "fscore0": self.f1_per_class[0],
            "fscore1": self.f1_per_class[1],
            "fscore2": self.f1_per_class[2],
            "spearman": self.spearman,
            "confusion": [list(row) for row in self.confusion],
        }


def confusion_matrix(pred, gold) -> tuple[tuple[int, ...], ...]:
    pred = check_labels(pred)
    gold = check_labels(gold)
    counts = np.zeros((N_CLASSES, N_CLASSES), dtype=np.int64)
    for g, p in zip(gold, pred):
        counts[g, p] += 1
    return tuple(tuple(int(v) for v in row) for row in counts)


def build_report(pred, gold_labels, gold_scores=None) -> EvaluationReport:
    """Assemble all metrics for one run.

    Spearman compares predicted labels (as ordinal scores) against the gold
    plausibility scores when supplied, otherwise against the gold labels'
    scores. Constant predictions leave the Spearman field absent.
    """
    pred = check_labels(pred)
    gold = check_labels(gold_labels, n=len(pred))
    pred_scores = [label_to_score(c) for c in pred]
    reference = list(gold_scores) if gold_scores is not None else [label_to_score(c) for c in gold]
    if len(reference) != len(pred):
        raise LengthMismatchError(len(pred), len(reference))
    try:
        rho = spearman_rank(pred_scores, reference)
    except ConstantVectorError:
        rho = None
    return EvaluationReport(
        accuracy=accuracy(pred, gold),
        f1_per_class=tuple(per_class_f1(pred, gold, c) for c in Label),
        spearman=rho,
        confusion=confusion_matrix(pred, gold),
        n=len(pred),
    )


# --- rendering --------------------------------------------------------------

_COLUMNS = ["accuracy", "fscore0", "fscore1", "fscore2", "spearman rank"]


def _format_row(name: str, report: EvaluationReport) -> list[str]:
    rho = "-" if report.spearman is None else f"{report.spearman:.3f}"
    return [
        name,
        f"{report.accuracy:.2f}",
        f"{report.f1_per_class[0]:.2f}",
        f"{report.f1_per_class[1]:.2f}",
        f"{report.f1_per_class[2]:.2f}",
        rho,
    ]


def render_reports_table(rows: list[tuple[str, EvaluationReport]]) -> str:
    """Aligned plain-text comparison table, one row per method."""
    table = [["method"] + _COLUMNS]
    for name, report in rows:
        table.append(_format_row(name, report))
    widths = [max(len(row[j]) for row in table) for j in range(len(table[0]))]
    lines = []
    for row in table:
        cells = [row[0].ljust(widths[0])] + [
            cell.rjust(widths[j + 1]) for j, cell in enumerate(row[1:])
        ]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines) + "\n"


def render_report_json(rows: list[tuple[str, EvaluationReport]]) -> str:
    """Full-precision machine-readable form of the same table."""
    doc = {"reports": [{"method": name, **report.to_json_dict()} for name, report in rows]}
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"
