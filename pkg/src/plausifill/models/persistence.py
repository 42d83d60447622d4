"""JSON persistence for fitted heads.

One document per model: a type tag, fitted parameters, the constructor
hyperparameters, optional threshold calibration, and the feature column
names the head was fitted on. Floats serialize at full precision (JSON uses
shortest-repr, which round-trips float64 exactly). Loading a model against
a matrix with different column names is an error.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import ColumnMismatchError, PlausifillError
from ..scores.tfidf import TfidfVectorizer
from .calibration import CalibratedRegressionClassifier, ThresholdCalibration
from .linear import LeastSquaresRegressor, LogisticRegressionClassifier
from .naive_bayes import GaussianNBClassifier, MultinomialNBClassifier

FORMAT_TAG = "plausifill-model"
FORMAT_VERSION = 1


@dataclass
class SavedModel:
    """A fitted head plus everything needed to apply it to new features."""

    head_type: str
    head: object
    columns: tuple[str, ...]
    vectorizer: TfidfVectorizer | None = None

    def check_columns(self, column_names) -> None:
        if tuple(column_names) != tuple(self.columns):
            raise ColumnMismatchError(column_names, self.columns)


def _array(values) -> list:
    return np.asarray(values, dtype=np.float64).tolist()


def _head_parameters(head_type: str, head) -> dict:
    if head_type == "gaussian_nb":
        return {
            "class_prior": _array(head.class_prior_),
            "theta": _array(head.theta_),
            "var": _array(head.var_),
        }
    if head_type == "multinomial_nb":
        return {
            "class_log_prior": _array(head.class_log_prior_),
            "feature_log_prob": _array(head.feature_log_prob_),
        }
    if head_type == "logistic":
        return {"weights": _array(head.weights_), "bias": _array(head.bias_)}
    if head_type == "linear_regression":
        return {"coef": _array(head.regressor_.coef_), "intercept": head.regressor_.intercept_}
    raise PlausifillError(f"unknown head type {head_type!r}")


_HEAD_CLASSES = {
    "gaussian_nb": GaussianNBClassifier,
    "multinomial_nb": MultinomialNBClassifier,
    "logistic": LogisticRegressionClassifier,
    "linear_regression": CalibratedRegressionClassifier,
}


def head_type_of(head) -> str:
    for name, cls in _HEAD_CLASSES.items():
        if isinstance(head, cls):
            return name
    raise PlausifillError(f"cannot persist head of type {type(head).__name__}")


def save_model(path: str | Path, head, columns, vectorizer: TfidfVectorizer | None = None) -> None:
    head_type = head_type_of(head)
    doc = {
        "format": FORMAT_TAG,
        "version": FORMAT_VERSION,
        "head": head_type,
        "columns": list(columns),
        "hyperparameters": head.get_params(),
        "parameters": _head_parameters(head_type, head),
        "calibration": None,
        "vectorizer": None,
    }
    if head_type == "linear_regression":
        cal = head.calibration_
        doc["calibration"] = {
            "t1": cal.t1,
            "t2": cal.t2,
            "zero_ngram_rule": cal.zero_ngram_rule,
            "class_proportions": list(cal.class_proportions),
        }
    if vectorizer is not None:
        doc["vectorizer"] = {
            "vocabulary": sorted(vectorizer.vocabulary_, key=vectorizer.vocabulary_.get),
            "idf": _array(vectorizer.idf_),
        }
    Path(path).write_text(
        json.dumps(doc, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )


def load_model(path: str | Path) -> SavedModel:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as err:
        raise PlausifillError(f"{path}: not a valid model file: {err}") from None
    if doc.get("format") != FORMAT_TAG:
        raise PlausifillError(f"{path}: not a {FORMAT_TAG} document")
    head_type = doc["head"]
    if head_type not in _HEAD_CLASSES:
        raise PlausifillError(f"{path}: unknown head type {head_type!r}")
    head = _HEAD_CLASSES[head_type](**doc["hyperparameters"])
    params = doc["parameters"]
    n_features = None

    if head_type == "gaussian_nb":
        head.class_prior_ = np.array(params["class_prior"])
        head.theta_ = np.array(params["theta"])
        head.var_ = np.array(params["var"])
        n_features = head.theta_.shape[1]
    elif head_type == "multinomial_nb":
        head.class_log_prior_ = np.array(params["class_log_prior"])
        head.feature_log_prob_ = np.array(params["feature_log_prob"])
        n_features = head.feature_log_prob_.shape[1]
    elif head_type == "logistic":
        head.weights_ = np.array(params["weights"])
        head.bias_ = np.array(params["bias"])
        head.loss_history_ = []
        n_features = head.weights_.shape[1]
    elif head_type == "linear_regression":
        reg = LeastSquaresRegressor()
        reg.coef_ = np.array(params["coef"])
        reg.intercept_ = float(params["intercept"])
        reg.n_features_in_ = len(reg.coef_)
        head.regressor_ = reg
        cal = doc["calibration"]
        head.calibration_ = ThresholdCalibration(
            t1=cal["t1"],
            t2=cal["t2"],
            zero_ngram_rule=cal["zero_ngram_rule"],
            class_proportions=tuple(cal["class_proportions"]),
        )
        n_features = reg.n_features_in_
    if n_features is not None:
        head.n_features_in_ = n_features

    vectorizer = None
    if doc.get("vectorizer"):
        vectorizer = TfidfVectorizer()
        vectorizer.vocabulary_ = {t: j for j, t in enumerate(doc["vectorizer"]["vocabulary"])}
        vectorizer.idf_ = np.array(doc["vectorizer"]["idf"])

    return SavedModel(
        head_type=head_type,
        head=head,
        columns=tuple(doc["columns"]),
        vectorizer=vectorizer,
    )
