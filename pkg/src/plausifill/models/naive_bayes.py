"""Naive Bayes heads: Gaussian over continuous score features, multinomial
over tf-idf counts.

Both follow the sklearn estimator protocol (fit/predict/predict_proba,
get_params via BaseEstimator) so they compose with pipelines and grid
search. Argmax ties break toward the lower ordinal class.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp
from sklearn.base import BaseEstimator, ClassifierMixin

from ..errors import NonFiniteError
from ..validation import (
    N_CLASSES,
    check_features,
    check_labels,
    check_non_negative,
    check_sparse_or_dense,
)


def _log_normalize(log_joint: np.ndarray) -> np.ndarray:
    """Rows of normalized probabilities from unnormalized log joints."""
    shift = log_joint - log_joint.max(axis=1, keepdims=True)
    probs = np.exp(shift)
    return probs / probs.sum(axis=1, keepdims=True)


class GaussianNBClassifier(ClassifierMixin, BaseEstimator):
    """Gaussian Naive Bayes over continuous features.

    Priors are class frequencies; per-class per-feature means and variances
    are maximum-likelihood estimates with variances clamped to ``var_floor``.
    All three classes must appear in the training labels.
    """

    def __init__(self, var_floor: float = 1e-9):
        self.var_floor = var_floor

    def fit(self, X, y) -> "GaussianNBClassifier":
        X = check_features(X)
        y = check_labels(y, n=X.shape[0], require_all_classes=True)
        n, d = X.shape
        self.n_features_in_ = d
        self.class_prior_ = np.zeros(N_CLASSES)
        self.theta_ = np.zeros((N_CLASSES, d))
        self.var_ = np.zeros((N_CLASSES, d))
        for c in range(N_CLASSES):
            Xc = X[y == c]
            self.class_prior_[c] = Xc.shape[0] / n
            self.theta_[c] = Xc.mean(axis=0)
            self.var_[c] = np.maximum(Xc.var(axis=0), self.var_floor)
        return self

    def _log_joint(self, X) -> np.ndarray:
        X = check_features(X, n_features=self.n_features_in_)
        out = np.empty((X.shape[0], N_CLASSES))
        for c in range(N_CLASSES):
            gauss = (
                -0.5 * np.log(2.0 * np.pi * self.var_[c])
                - 0.5 * (X - self.theta_[c]) ** 2 / self.var_[c]
            )
            out[:, c] = np.log(self.class_prior_[c]) + gauss.sum(axis=1)
        return out

    def predict_proba(self, X) -> np.ndarray:
        """Per-class posteriors; rows sum to 1."""
        return _log_normalize(self._log_joint(X))

    def predict(self, X) -> np.ndarray:
        # np.argmax takes the first maximum, i.e. the lower ordinal class on ties.
        return np.argmax(self._log_joint(X), axis=1)


class MultinomialNBClassifier(ClassifierMixin, BaseEstimator):
    """Multinomial Naive Bayes with additive smoothing, log-space throughout.

    Accepts dense arrays or scipy CSR matrices of non-negative features
    (tf-idf weights act as fractional counts, as in the usual text baseline).
    """

    def __init__(self, alpha: float = 1.0):
        self.alpha = alpha

    def fit(self, X, y) -> "MultinomialNBClassifier":
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        X = check_sparse_or_dense(X)
        check_non_negative(X)
        y = check_labels(y, n=X.shape[0], require_all_classes=True)
        n, d = X.shape
        self.n_features_in_ = d
        self.class_log_prior_ = np.empty(N_CLASSES)
        self.feature_log_prob_ = np.empty((N_CLASSES, d))
        for c in range(N_CLASSES):
            mask = y == c
            self.class_log_prior_[c] = np.log(mask.sum() / n)
            Xc = X[mask]
            term_counts = np.asarray(Xc.sum(axis=0)).ravel() + self.alpha
            self.feature_log_prob_[c] = np.log(term_counts) - np.log(term_counts.sum())
        return self

    def _log_joint(self, X) -> np.ndarray:
        X = check_sparse_or_dense(X, n_features=self.n_features_in_)
        check_non_negative(X)
        scores = X @ self.feature_log_prob_.T
        if sp.issparse(scores):
            scores = scores.toarray()
        return np.asarray(scores) + self.class_log_prior_

    def predict_proba(self, X) -> np.ndarray:
        return _log_normalize(self._log_joint(X))

    def predict(self, X) -> np.ndarray:
        log_joint = self._log_joint(X)
        if not np.all(np.isfinite(log_joint)):
            raise NonFiniteError("log joint")
        return np.argmax(log_joint, axis=1)
