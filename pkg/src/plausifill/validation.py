"""Input checks shared by the model heads.

These normalize inputs to numpy arrays and raise the package's structured
errors instead of letting shape bugs surface as cryptic numpy failures.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from .corpus import Label
from .errors import (
    LengthMismatchError,
    MissingClassError,
    NegativeFeatureError,
    WidthMismatchError,
)

N_CLASSES = len(Label)


def check_features(X, n_features: int | None = None) -> np.ndarray:
    """Coerce to a 2-D float64 array; raise WidthMismatch against a fitted width."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    if X.ndim != 2:
        raise ValueError(f"expected a 2-D feature array, got ndim={X.ndim}")
    if n_features is not None and X.shape[1] != n_features:
        raise WidthMismatchError(X.shape[1], n_features)
    return X


def check_sparse_or_dense(X, n_features: int | None = None):
    """Like check_features but passes scipy sparse matrices through as CSR."""
    if sp.issparse(X):
        X = X.tocsr().astype(np.float64)
        if n_features is not None and X.shape[1] != n_features:
            raise WidthMismatchError(X.shape[1], n_features)
        return X
    return check_features(X, n_features)


def check_labels(y, n: int | None = None, require_all_classes: bool = False) -> np.ndarray:
    """Coerce labels (Label enums or ints 0..2) to an int array."""
    y = np.asarray([int(v) for v in y], dtype=np.int64)
    if y.size and (y.min() < 0 or y.max() >= N_CLASSES):
        raise ValueError(f"labels must be in 0..{N_CLASSES - 1}")
    if n is not None and len(y) != n:
        raise LengthMismatchError(n, len(y))
    if require_all_classes:
        present = set(y.tolist())
        for label in Label:
            if int(label) not in present:
                raise MissingClassError(label)
    return y


def check_non_negative(X) -> None:
    data = X.data if sp.issparse(X) else X
    if np.size(data) and np.min(data) < 0:
        raise NegativeFeatureError()


def check_aligned(a, b) -> None:
    if len(a) != len(b):
        raise LengthMismatchError(len(a), len(b))
