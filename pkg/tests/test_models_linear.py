import numpy as np
import pytest

from plausifill.errors import NonFiniteError, RankDeficientError
from plausifill.models import (
    LeastSquaresRegressor,
    LogisticRegressionClassifier,
    logistic_loss_and_grad,
)


def finite_difference_grads(weights, bias, X, y, l2, h=1e-6):
    gw = np.zeros_like(weights)
    gb = np.zeros_like(bias)
    for idx in np.ndindex(weights.shape):
        w_plus, w_minus = weights.copy(), weights.copy()
        w_plus[idx] += h
        w_minus[idx] -= h
        lp, _, _ = logistic_loss_and_grad(w_plus, bias, X, y, l2)
        lm, _, _ = logistic_loss_and_grad(w_minus, bias, X, y, l2)
        gw[idx] = (lp - lm) / (2 * h)
    for j in range(len(bias)):
        b_plus, b_minus = bias.copy(), bias.copy()
        b_plus[j] += h
        b_minus[j] -= h
        lp, _, _ = logistic_loss_and_grad(weights, b_plus, X, y, l2)
        lm, _, _ = logistic_loss_and_grad(weights, b_minus, X, y, l2)
        gb[j] = (lp - lm) / (2 * h)
    return gw, gb


def separable_three_class(n_per_class=15, rng=None):
    rng = rng or np.random.default_rng(0)
    centers = np.array([[-4.0, 0.0], [0.0, 4.0], [4.0, 0.0]])
    X = np.vstack([
        centers[c] + 0.3 * rng.normal(size=(n_per_class, 2)) for c in range(3)
    ])
    y = np.repeat([0, 1, 2], n_per_class)
    return X, y


class TestLogisticRegression:
    def test_separable_reaches_full_accuracy(self):
        X, y = separable_three_class()
        model = LogisticRegressionClassifier(learning_rate=0.5, epochs=800).fit(X, y)
        assert np.mean(model.predict(X) == y) == 1.0

    def test_zero_weights_give_uniform_probabilities(self):
        X, y = separable_three_class(n_per_class=3)
        model = LogisticRegressionClassifier(epochs=1, learning_rate=1e-12).fit(X, y)
        probs = model.predict_proba(X)
        assert np.allclose(probs, 1 / 3, atol=1e-9)

    def test_gradient_matches_finite_differences(self, rng):
        for _ in range(5):
            n, d = int(rng.integers(4, 12)), int(rng.integers(1, 5))
            X = rng.normal(size=(n, d))
            y = rng.integers(0, 3, size=n)
            W = rng.normal(size=(3, d)) * 0.5
            b = rng.normal(size=3) * 0.5
            l2 = float(rng.uniform(0, 0.1))
            _, gw, gb = logistic_loss_and_grad(W, b, X, y, l2)
            fw, fb = finite_difference_grads(W, b, X, y, l2)
            assert np.allclose(gw, fw, rtol=1e-5, atol=1e-7)
            assert np.allclose(gb, fb, rtol=1e-5, atol=1e-7)

    def test_loss_non_increasing(self):
        X, y = separable_three_class()
        model = LogisticRegressionClassifier().fit(X, y)
        history = np.array(model.loss_history_)
        assert np.all(np.diff(history) <= 0)

    def test_diverged_loss_raises(self):
        X, y = separable_three_class()
        with pytest.raises(NonFiniteError):
            LogisticRegressionClassifier(learning_rate=1e9, epochs=50).fit(X * 100, y)

    def test_permutation_equivariance(self, rng):
        X, y = separable_three_class(n_per_class=10)
        perm = rng.permutation(len(y))
        a = LogisticRegressionClassifier(epochs=200).fit(X, y)
        b = LogisticRegressionClassifier(epochs=200).fit(X[perm], y[perm])
        assert np.allclose(a.weights_, b.weights_, atol=1e-12)
        assert np.allclose(a.bias_, b.bias_, atol=1e-12)

    def test_hyperparameter_validation(self):
        X, y = separable_three_class(n_per_class=2)
        with pytest.raises(ValueError):
            LogisticRegressionClassifier(learning_rate=0.0).fit(X, y)
        with pytest.raises(ValueError):
            LogisticRegressionClassifier(epochs=0).fit(X, y)
        with pytest.raises(ValueError):
            LogisticRegressionClassifier(l2=-1.0).fit(X, y)


class TestLeastSquares:
    def test_exact_line(self):
        X = np.arange(10, dtype=float).reshape(-1, 1)
        y = 2.0 * X.ravel() + 1.0
        model = LeastSquaresRegressor().fit(X, y)
        assert model.coef_[0] == pytest.approx(2.0, abs=1e-9)
        assert model.intercept_ == pytest.approx(1.0, abs=1e-9)

    def test_planted_coefficients_recovered(self, rng):
        X = rng.normal(size=(50, 4))
        beta = np.array([1.5, -2.0, 0.25, 3.0])
        y = X @ beta + 0.75
        model = LeastSquaresRegressor().fit(X, y)
        assert np.allclose(model.coef_, beta, atol=1e-9)
        assert model.intercept_ == pytest.approx(0.75, abs=1e-9)

    def test_duplicated_column_uses_ridge_fallback(self, rng):
        base = rng.normal(size=(20, 1))
        X = np.hstack([base, base])
        y = base.ravel() * 3.0 + 1.0
        model = LeastSquaresRegressor().fit(X, y)
        assert np.all(np.isfinite(model.coef_))
        assert np.allclose(model.predict(X), y, atol=1e-4)

    def test_residuals_orthogonal_to_features(self, rng):
        X = rng.normal(size=(40, 3))
        y = rng.normal(size=40)
        model = LeastSquaresRegressor().fit(X, y)
        residuals = y - model.predict(X)
        assert np.allclose(X.T @ residuals, 0.0, atol=1e-8)
        assert residuals.sum() == pytest.approx(0.0, abs=1e-8)

    def test_underdetermined_rejected(self):
        with pytest.raises(RankDeficientError):
            LeastSquaresRegressor().fit(np.eye(3), np.ones(3))

    def test_permutation_equivariance(self, rng):
        X = rng.normal(size=(30, 2))
        y = rng.normal(size=30)
        perm = rng.permutation(30)
        a = LeastSquaresRegressor().fit(X, y)
        b = LeastSquaresRegressor().fit(X[perm], y[perm])
        assert np.allclose(a.coef_, b.coef_, atol=1e-12)
        assert a.intercept_ == pytest.approx(b.intercept_, abs=1e-12)
