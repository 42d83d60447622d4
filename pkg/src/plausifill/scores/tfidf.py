"""Bag-of-words tf-idf features for the baseline text classifier."""

from __future__ import annotations

import math

import numpy as np
import scipy.sparse as sp
from sklearn.base import BaseEstimator, TransformerMixin

from ..errors import EmptyCorpusError
from ..preprocess import tokenize


class TfidfVectorizer(TransformerMixin, BaseEstimator):
    """tf * idf features over the fitting corpus's vocabulary.

    tf is the raw term count per document and idf is the smoothed
    ``ln((1 + N) / (1 + df)) + 1``; entries are not normalized. Tokens unseen
    at fit time are dropped at transform time.

    Attributes after fit: ``vocabulary_`` (term -> column, terms sorted) and
    ``idf_`` (per-column idf values).
    """

    def fit(self, documents: list[str], y=None) -> "TfidfVectorizer":
        if len(documents) == 0:
            raise EmptyCorpusError()
        doc_tokens = [tokenize(doc) for doc in documents]
        terms = sorted({t for tokens in doc_tokens for t in tokens})
        self.vocabulary_ = {term: j for j, term in enumerate(terms)}
        df = np.zeros(len(terms), dtype=np.int64)
        for tokens in doc_tokens:
            for term in set(tokens):
                df[self.vocabulary_[term]] += 1
        n = len(documents)
        self.idf_ = np.log((1.0 + n) / (1.0 + df)) + 1.0
        return self

    def transform(self, documents: list[str]) -> sp.csr_matrix:
        vocab = self.vocabulary_
        data, indices, indptr = [], [], [0]
        for doc in documents:
            counts: dict[int, int] = {}
            for token in tokenize(doc):
                j = vocab.get(token)
                if j is not None:
                    counts[j] = counts.get(j, 0) + 1
            for j in sorted(counts):
                indices.append(j)
                data.append(counts[j] * self.idf_[j])
            indptr.append(len(indices))
        return sp.csr_matrix(
            (np.array(data, dtype=np.float64), indices, indptr),
            shape=(len(documents), len(vocab)),
        )

    def fit_transform(self, documents: list[str], y=None) -> sp.csr_matrix:
        return self.fit(documents).transform(documents)
