"""Linear heads: multinomial logistic regression trained by full-batch
gradient descent, and ordinary least squares for the ordinal-score targets.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, RegressorMixin

from ..errors import NonFiniteError, RankDeficientError
from ..validation import N_CLASSES, check_features, check_labels

_RIDGE_FALLBACK = 1e-8
_COND_LIMIT = 1e12


def softmax(scores: np.ndarray) -> np.ndarray:
    shift = scores - scores.max(axis=1, keepdims=True)
    e = np.exp(shift)
    return e / e.sum(axis=1, keepdims=True)


def logistic_loss_and_grad(weights, bias, X, y, l2):
    """Softmax cross-entropy with L2 on the weights (bias excluded).

    Returns (loss, grad_weights, grad_bias). Kept as a standalone function so
    the analytic gradient can be checked against finite differences.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    n = X.shape[0]
    probs = softmax(X @ weights.T + bias)
    with np.errstate(divide="ignore"):  # log(0) -> inf flags divergence downstream
        nll = -np.log(probs[np.arange(n), y]).sum() / n
    loss = nll + 0.5 * l2 * np.sum(weights**2)
    delta = probs.copy()
    delta[np.arange(n), y] -= 1.0
    grad_w = delta.T @ X / n + l2 * weights
    grad_b = delta.sum(axis=0) / n
    return loss, grad_w, grad_b


class LogisticRegressionClassifier(ClassifierMixin, BaseEstimator):
    """Three-class softmax regression, zero-initialized, full-batch GD.

    ``loss_history_`` records the objective after every epoch; with the
    default learning rate it is non-increasing. The seed is recorded for
    provenance (the deterministic zero init does not consume it).
    """

    def __init__(self, learning_rate: float = 0.1, epochs: int = 500, l2: float = 1e-4, seed: int = 0):
        self.learning_rate = learning_rate
        self.epochs = epochs
        self.l2 = l2
        self.seed = seed

    def fit(self, X, y) -> "LogisticRegressionClassifier":
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if self.l2 < 0:
            raise ValueError("l2 must be non-negative")
        X = check_features(X)
        y = check_labels(y, n=X.shape[0])
        d = X.shape[1]
        self.n_features_in_ = d
        W = np.zeros((N_CLASSES, d))
        b = np.zeros(N_CLASSES)
        history = []
        for _ in range(self.epochs):
            loss, grad_w, grad_b = logistic_loss_and_grad(W, b, X, y, self.l2)
            if not np.isfinite(loss):
                raise NonFiniteError("loss")
            W -= self.learning_rate * grad_w
            b -= self.learning_rate * grad_b
            history.append(loss)
        if not (np.all(np.isfinite(W)) and np.all(np.isfinite(b))):
            raise NonFiniteError("weights")
        self.weights_ = W
        self.bias_ = b
        self.loss_history_ = history
        return self

    def decision_function(self, X) -> np.ndarray:
        X = check_features(X, n_features=self.n_features_in_)
        return X @ self.weights_.T + self.bias_

    def predict_proba(self, X) -> np.ndarray:
        return softmax(self.decision_function(X))

    def predict(self, X) -> np.ndarray:
        # First maximum wins, so exact ties go to the lower ordinal class.
        return np.argmax(self.decision_function(X), axis=1)


class LeastSquaresRegressor(RegressorMixin, BaseEstimator):
    """OLS with intercept via normal equations.

    A near-singular Gram matrix (condition number past 1e12, or a failed
    solve) falls back to a tiny ridge (1e-8); if even that fails the design
    is reported rank deficient.
    """

    def fit(self, X, y) -> "LeastSquaresRegressor":
        X = check_features(X)
        y = np.asarray(y, dtype=np.float64).ravel()
        if len(y) != X.shape[0]:
            raise ValueError("X and y lengths differ")
        n, d = X.shape
        if n <= d:
            raise RankDeficientError()
        A = np.hstack([np.ones((n, 1)), X])
        gram = A.T @ A
        rhs = A.T @ y
        beta = None
        if np.linalg.cond(gram) < _COND_LIMIT:
            try:
                beta = np.linalg.solve(gram, rhs)
            except np.linalg.LinAlgError:
                beta = None
        if beta is None or not np.all(np.isfinite(beta)):
            try:
                beta = np.linalg.solve(gram + _RIDGE_FALLBACK * np.eye(d + 1), rhs)
            except np.linalg.LinAlgError:
                raise RankDeficientError() from None
            if not np.all(np.isfinite(beta)):
                raise RankDeficientError()
        self.n_features_in_ = d
        self.intercept_ = float(beta[0])
        self.coef_ = beta[1:]
        return self

    def predict(self, X) -> np.ndarray:
        X = check_features(X, n_features=self.n_features_in_)
        return X @ self.coef_ + self.intercept_
