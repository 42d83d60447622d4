"""Distribution-matched thresholds that turn regression output into labels.

The two cut-points are placed so that, on the values they were fitted on,
the predicted class mix equals the training label mix. The optional
zero-frequency rule sends any candidate whose around-the-slot n-gram count
is zero straight to implausible, whatever the regression said.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin

from ..corpus import LABEL_SCORES, Label
from ..errors import PlausifillError
from ..validation import check_aligned, check_features, check_labels
from .linear import LeastSquaresRegressor


@dataclass(frozen=True)
class ThresholdCalibration:
    """Two ordered cut-points plus the class mix they were derived from."""

    t1: float
    t2: float
    zero_ngram_rule: bool = False
    class_proportions: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        if self.t1 > self.t2:
            raise PlausifillError(f"thresholds out of order: {self.t1} > {self.t2}")

    def apply(self, values, ngram_counts=None) -> np.ndarray:
        """Labels from regression values: below t1 implausible, below t2
        neutral, else plausible (boundary values promote upward). A zero
        n-gram count overrides everything when the rule is on."""
        values = np.asarray(values, dtype=np.float64).ravel()
        labels = np.full(len(values), int(Label.PLAUSIBLE), dtype=np.int64)
        labels[values < self.t2] = int(Label.NEUTRAL)
        labels[values < self.t1] = int(Label.IMPLAUSIBLE)
        if self.zero_ngram_rule and ngram_counts is not None:
            counts = np.asarray(ngram_counts).ravel()
            check_aligned(counts, values)
            labels[counts == 0] = int(Label.IMPLAUSIBLE)
        return labels


def calibrate_thresholds(
    predictions, labels, zero_ngram_rule: bool = False
) -> ThresholdCalibration:
    """Fit the two cut-points so class proportions match the label mix.

    With class counts (n_imp, n_neu, n_pos) over n sorted predictions, t1 is
    the midpoint between the n_imp-th and (n_imp+1)-th smallest values and t2
    the midpoint two class blocks in. Distinct prediction values therefore
    reproduce the label proportions exactly; duplicated boundary values can
    shift a few assignments upward.
    """
    values = np.sort(np.asarray(predictions, dtype=np.float64).ravel())
    # All three classes present implies n >= 3.
    y = check_labels(labels, n=len(values), require_all_classes=True)
    n_imp = int(np.sum(y == int(Label.IMPLAUSIBLE)))
    n_neu = int(np.sum(y == int(Label.NEUTRAL)))
    t1 = 0.5 * (values[n_imp - 1] + values[n_imp])
    t2 = 0.5 * (values[n_imp + n_neu - 1] + values[n_imp + n_neu])
    n = len(values)
    proportions = (n_imp / n, n_neu / n, (n - n_imp - n_neu) / n)
    return ThresholdCalibration(
        t1=t1, t2=t2, zero_ngram_rule=zero_ngram_rule, class_proportions=proportions
    )


def predict_labels_regression(model, calibration: ThresholdCalibration, X, ngram_counts=None):
    """Regression values through the calibrated thresholds (plus zero rule)."""
    return calibration.apply(model.predict(X), ngram_counts=ngram_counts)


class CalibratedRegressionClassifier(ClassifierMixin, BaseEstimator):
    """OLS on the ordinal scores {1, 3, 5} with threshold calibration.

    ``fit`` fits the regressor and calibrates the thresholds on its own
    training predictions; ``recalibrate`` refits the cut-points on held-out
    values for dev-set calibration.
    """

    def __init__(self, zero_ngram_rule: bool = False):
        self.zero_ngram_rule = zero_ngram_rule

    def fit(self, X, y, ngram_counts=None) -> "CalibratedRegressionClassifier":
        X = check_features(X)
        y = check_labels(y, n=X.shape[0], require_all_classes=True)
        targets = np.array([LABEL_SCORES[c] for c in y])
        self.regressor_ = LeastSquaresRegressor().fit(X, targets)
        self.calibration_ = calibrate_thresholds(
            self.regressor_.predict(X), y, zero_ngram_rule=self.zero_ngram_rule
        )
        return self

    def recalibrate(self, X, y) -> "CalibratedRegressionClassifier":
        self.calibration_ = calibrate_thresholds(
            self.regressor_.predict(check_features(X, self.regressor_.n_features_in_)),
            y,
            zero_ngram_rule=self.zero_ngram_rule,
        )
        return self

    def predict_values(self, X) -> np.ndarray:
        return self.regressor_.predict(X)

    def predict(self, X, ngram_counts=None) -> np.ndarray:
        return self.calibration_.apply(self.regressor_.predict(X), ngram_counts=ngram_counts)
