"""Per-(instance, candidate) feature assembly from configured score sources.

Each source yields one or more numeric columns per pair; assembling several
sources side by side is what the ensemble experiments feed to a single head.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..corpus import ClozeInstance, Dataset, FillerCandidate
from ..errors import PlausifillError, ScoreSourceError
from ..preprocess import ContextMethod, fill_placeholder, render_context, tokenize
from .embeddings import (
    EmbeddingTable,
    SimilarityVariant,
    sentence_embedding,
    similarity_score,
)
from .mlm import VocabDistribution, logit_score, softmax_prob
from .ngrams import NgramTable, NgramTransform, ngram_frequency, ngram_to_feature
from .rtd import RtdTable, rtd_lookup


@dataclass(frozen=True)
class ScoreMatrix:
    """One feature row per (instance, candidate) pair, in dataset order."""

    instance_ids: tuple[str, ...]
    candidate_ids: tuple[int, ...]
    values: np.ndarray  # (n_pairs, n_columns) float64
    column_names: tuple[str, ...]

    def __post_init__(self):
        n, d = self.values.shape
        if len(self.instance_ids) != n or len(self.candidate_ids) != n:
            raise PlausifillError("row ids do not match value rows")
        if len(self.column_names) != d:
            raise PlausifillError("column names do not match value columns")
        if np.isnan(self.values).any():
            raise PlausifillError("score matrix contains NaN entries")


class MlmLogitSource:
    """Raw candidate logits straight from the scores file."""

    column_name = "mlm_logit"

    def __init__(self, distributions: dict[str, VocabDistribution]):
        self.distributions = distributions

    def value(self, instance: ClozeInstance, candidate: FillerCandidate) -> float:
        return logit_score(self._dist(instance), candidate.candidate_id)

    def _dist(self, instance: ClozeInstance) -> VocabDistribution:
        try:
            return self.distributions[instance.id]
        except KeyError:
            raise PlausifillError(f"no MLM distribution for instance {instance.id!r}") from None


class MlmSoftmaxSource(MlmLogitSource):
    """Exact full-vocabulary softmax probability per candidate."""

    column_name = "mlm_softmax"

    def value(self, instance: ClozeInstance, candidate: FillerCandidate) -> float:
        return softmax_prob(self._dist(instance), candidate.candidate_id)


class SimilaritySource(MlmLogitSource):
    """Cosine similarity between candidate-filled and top-token-filled contexts."""

    def __init__(
        self,
        distributions: dict[str, VocabDistribution],
        table: EmbeddingTable,
        variant: SimilarityVariant,
        method: ContextMethod,
        renormalize: bool = True,
    ):
        super().__init__(distributions)
        self.table = table
        self.variant = variant
        self.method = method
        self.renormalize = renormalize
        self.column_name = f"sim_{variant.value}"

    def value(self, instance: ClozeInstance, candidate: FillerCandidate) -> float:
        return similarity_score(
            self.variant,
            self._dist(instance),
            instance,
            candidate,
            self.method,
            self.table,
            renormalize=self.renormalize,
        )


class NgramSource:
    """Around-the-slot n-gram frequency, raw or log1p-transformed."""

    def __init__(self, table: NgramTable, transform: NgramTransform = NgramTransform.LOG1P):
        self.table = table
        self.transform = transform
        self.column_name = f"ngram_{transform.value}"

    def count(self, instance: ClozeInstance, candidate: FillerCandidate) -> int:
        return ngram_frequency(self.table, instance, candidate)

    def value(self, instance: ClozeInstance, candidate: FillerCandidate) -> float:
        return ngram_to_feature(self.count(instance, candidate), self.transform)


class RtdSource:
    """Precomputed replaced-token probability per pair."""

    column_name = "rtd"

    def __init__(self, table: RtdTable):
        self.table = table

    def value(self, instance: ClozeInstance, candidate: FillerCandidate) -> float:
        return rtd_lookup(self.table, instance.id, candidate.candidate_id)


class SentenceEmbeddingSource:
    """Candidate-filled context embedding: contextual vector when exported,
    otherwise the average of static word vectors."""

    def __init__(
        self,
        table: EmbeddingTable,
        method: ContextMethod,
        contextual: dict[tuple[str, int], np.ndarray] | None = None,
    ):
        self.table = table
        self.method = method
        self.contextual = contextual or {}

    @property
    def column_names(self) -> list[str]:
        dim = self.dimension
        return [f"emb_{j:03d}" for j in range(dim)]

    @property
    def dimension(self) -> int:
        if self.contextual:
            return len(next(iter(self.contextual.values())))
        return self.table.dimension

    def vector(self, instance: ClozeInstance, candidate: FillerCandidate) -> np.ndarray:
        override = self.contextual.get((instance.id, candidate.candidate_id))
        if override is not None:
            return override
        filled = fill_placeholder(render_context(instance, self.method), candidate.text)
        return sentence_embedding(tokenize(filled), self.table)


def assemble_score_matrix(dataset: Dataset, sources: list) -> ScoreMatrix:
    """Evaluate every source for every (instance, candidate) pair.

    Columns follow the source order; rows follow dataset order. Any source
    failure is re-raised annotated with the pair and column it hit.
    """
    columns: list[str] = []
    for source in sources:
        columns.extend(getattr(source, "column_names", None) or [source.column_name])

    instance_ids: list[str] = []
    candidate_ids: list[int] = []
    rows: list[list[float]] = []
    for instance, candidate in dataset.pairs():
        row: list[float] = []
        for source in sources:
            name = getattr(source, "column_name", None) or "sentence_embedding"
            try:
                if hasattr(source, "vector"):
                    row.extend(float(x) for x in source.vector(instance, candidate))
                else:
                    row.append(float(source.value(instance, candidate)))
            except PlausifillError as err:
                raise ScoreSourceError(instance.id, candidate.candidate_id, name, err) from err
        instance_ids.append(instance.id)
        candidate_ids.append(candidate.candidate_id)
        rows.append(row)

    values = np.array(rows, dtype=np.float64).reshape(len(rows), len(columns))
    return ScoreMatrix(
        instance_ids=tuple(instance_ids),
        candidate_ids=tuple(candidate_ids),
        values=values,
        column_names=tuple(columns),
    )
