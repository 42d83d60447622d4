"""Exception types raised across the package.

Every error carries enough context (instance id, candidate id, line number,
column name) to locate the offending input without a debugger.
"""

from __future__ import annotations


class PlausifillError(Exception):
    """Base class for all errors raised by this package."""


# --- corpus ---------------------------------------------------------------


class MalformedRowError(PlausifillError):
    def __init__(self, line_no: int, reason: str):
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"line {line_no}: {reason}")


class MissingPlaceholderError(PlausifillError):
    def __init__(self, instance_id: str | None = None):
        self.instance_id = instance_id
        where = f" in instance {instance_id!r}" if instance_id else ""
        super().__init__(f"masked sentence contains no placeholder{where}")


class MultiplePlaceholdersError(PlausifillError):
    def __init__(self, instance_id: str | None = None):
        self.instance_id = instance_id
        where = f" in instance {instance_id!r}" if instance_id else ""
        super().__init__(f"text contains more than one placeholder{where}")


class WrongCandidateCountError(PlausifillError):
    def __init__(self, instance_id: str, reason: str = "expected exactly 5 well-formed candidates"):
        self.instance_id = instance_id
        super().__init__(f"instance {instance_id!r}: {reason}")


class BadLabelError(PlausifillError):
    def __init__(self, instance_id: str, token: str):
        self.instance_id = instance_id
        self.token = token
        super().__init__(f"instance {instance_id!r}: unknown label {token!r}")


class BadScoreError(PlausifillError):
    def __init__(self, instance_id: str | None, value: object):
        self.instance_id = instance_id
        self.value = value
        where = f"instance {instance_id!r}: " if instance_id else ""
        super().__init__(f"{where}plausibility score {value!r} not a decimal in [1, 5]")


# --- preprocess -----------------------------------------------------------


class NoPlaceholderError(PlausifillError):
    def __init__(self):
        super().__init__("text contains no placeholder to fill")


class TooManyWordsError(PlausifillError):
    def __init__(self, filler: str):
        self.filler = filler
        super().__init__(f"filler {filler!r} has more than two words")


# --- score sources --------------------------------------------------------


class FileFormatError(PlausifillError):
    """A precomputed-score or table file violates its documented format."""

    def __init__(self, path: str, line_no: int, reason: str):
        self.path = path
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"{path}:{line_no}: {reason}")


class UnknownCandidateError(PlausifillError):
    def __init__(self, instance_id: str, candidate_id: int):
        self.instance_id = instance_id
        self.candidate_id = candidate_id
        super().__init__(f"no logit for candidate {candidate_id} of instance {instance_id!r}")


class AllTokensOOVError(PlausifillError):
    def __init__(self, tokens=None):
        self.tokens = tokens
        super().__init__("no token has a vector in the embedding table")


class ZeroVectorError(PlausifillError):
    def __init__(self):
        super().__init__("cosine similarity undefined for a zero vector")


class DimensionMismatchError(PlausifillError):
    def __init__(self, got: int, expected: int):
        self.got = got
        self.expected = expected
        super().__init__(f"vector dimension {got} does not match {expected}")


class InsufficientTopKError(PlausifillError):
    def __init__(self, have: int, need: int):
        self.have = have
        self.need = need
        super().__init__(f"similarity variant needs {need} top tokens, distribution has {have}")


class MissingScoreError(PlausifillError):
    def __init__(self, instance_id: str, candidate_id: int):
        self.instance_id = instance_id
        self.candidate_id = candidate_id
        super().__init__(f"no stored score for ({instance_id!r}, {candidate_id})")


class EmptyCorpusError(PlausifillError):
    def __init__(self):
        super().__init__("cannot fit tf-idf on an empty corpus")


class ScoreSourceError(PlausifillError):
    """Wraps a source failure with the (instance, candidate, column) it hit."""

    def __init__(self, instance_id: str, candidate_id: int, column: str, cause: Exception):
        self.instance_id = instance_id
        self.candidate_id = candidate_id
        self.column = column
        self.cause = cause
        super().__init__(
            f"column {column!r} failed on ({instance_id!r}, {candidate_id}): {cause}"
        )


# --- model heads ----------------------------------------------------------


class MissingClassError(PlausifillError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"training data has no samples of class {label!r}")


class WidthMismatchError(PlausifillError):
    def __init__(self, got: int, expected: int):
        self.got = got
        self.expected = expected
        super().__init__(f"feature width {got} does not match fitted width {expected}")


class NegativeFeatureError(PlausifillError):
    def __init__(self):
        super().__init__("multinomial NB requires non-negative features")


class NonFiniteError(PlausifillError):
    def __init__(self, what: str = "loss"):
        super().__init__(f"{what} became non-finite during optimization")


class RankDeficientError(PlausifillError):
    def __init__(self):
        super().__init__("design matrix is rank deficient even after ridge stabilization")


class ColumnMismatchError(PlausifillError):
    def __init__(self, got, expected):
        self.got = list(got)
        self.expected = list(expected)
        super().__init__(
            f"model was fitted on columns {self.expected}, matrix has {self.got}"
        )


# --- evaluation -----------------------------------------------------------


class LengthMismatchError(PlausifillError):
    def __init__(self, n_left: int, n_right: int):
        super().__init__(f"vectors have different lengths ({n_left} vs {n_right})")


class EmptyError(PlausifillError):
    def __init__(self):
        super().__init__("metric undefined on empty input")


class ConstantVectorError(PlausifillError):
    def __init__(self, which: str = "input"):
        self.which = which
        super().__init__(f"rank correlation undefined: {which} vector is constant")


# --- experiment driver ----------------------------------------------------


class ConfigInvalidError(PlausifillError):
    def __init__(self, details: str):
        self.details = details
        super().__init__(f"invalid experiment config: {details}")


class IncompatibleHeadSourceError(PlausifillError):
    def __init__(self, head: str, reason: str):
        self.head = head
        self.reason = reason
        super().__init__(f"head {head!r} incompatible with configured sources: {reason}")
