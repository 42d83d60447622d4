"""Classification and regression heads over score features."""

from .calibration import (
    CalibratedRegressionClassifier,
    ThresholdCalibration,
    calibrate_thresholds,
    predict_labels_regression,
)
from .linear import (
    LeastSquaresRegressor,
    LogisticRegressionClassifier,
    logistic_loss_and_grad,
    softmax,
)
from .naive_bayes import GaussianNBClassifier, MultinomialNBClassifier
from .persistence import SavedModel, head_type_of, load_model, save_model

__all__ = [
    "CalibratedRegressionClassifier",
    "GaussianNBClassifier",
    "LeastSquaresRegressor",
    "LogisticRegressionClassifier",
    "MultinomialNBClassifier",
    "SavedModel",
    "ThresholdCalibration",
    "calibrate_thresholds",
    "head_type_of",
    "load_model",
    "logistic_loss_and_grad",
    "predict_labels_regression",
    "save_model",
    "softmax",
]
