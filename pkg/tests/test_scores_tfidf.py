import math

import numpy as np
import pytest

from plausifill.errors import EmptyCorpusError
from plausifill.scores.tfidf import TfidfVectorizer


class TestTfidf:
    def test_idf_formula(self):
        v = TfidfVectorizer().fit(["a a b", "a c"])
        idf = {term: v.idf_[j] for term, j in v.vocabulary_.items()}
        assert idf["a"] == pytest.approx(math.log(3 / 3) + 1, abs=1e-12)
        assert idf["b"] == pytest.approx(math.log(3 / 2) + 1, abs=1e-12)
        assert idf["c"] == pytest.approx(math.log(3 / 2) + 1, abs=1e-12)

    def test_single_document_idf_uniform(self):
        v = TfidfVectorizer().fit(["a b c"])
        assert np.allclose(v.idf_, math.log(2 / 2) + 1)

    def test_entry_is_tf_times_idf(self):
        v = TfidfVectorizer().fit(["a a b", "a c"])
        row = v.transform(["a a b"]).toarray()[0]
        assert row[v.vocabulary_["a"]] == pytest.approx(2 * 1.0, abs=1e-12)
        assert row[v.vocabulary_["b"]] == pytest.approx(1 * (math.log(1.5) + 1), abs=1e-12)

    def test_absent_term_not_stored(self):
        v = TfidfVectorizer().fit(["a a b", "a c"])
        sparse = v.transform(["a c"])
        assert sparse[0, v.vocabulary_["b"]] == 0.0
        assert sparse.nnz == 2

    def test_vocabulary_sorted(self):
        v = TfidfVectorizer().fit(["cherry apple", "banana"])
        assert list(v.vocabulary_) == ["apple", "banana", "cherry"]
        assert list(v.vocabulary_.values()) == [0, 1, 2]

    def test_unseen_tokens_dropped(self):
        v = TfidfVectorizer().fit(["a b"])
        row = v.transform(["a brand-new-token"]).toarray()[0]
        assert row[v.vocabulary_["a"]] > 0
        assert row.sum() == row[v.vocabulary_["a"]]

    def test_empty_corpus(self):
        with pytest.raises(EmptyCorpusError):
            TfidfVectorizer().fit([])

    def test_entries_non_negative(self, rng):
        docs = [
            " ".join(rng.choice(["a", "b", "c", "d"], size=rng.integers(1, 8)))
            for _ in range(10)
        ]
        X = TfidfVectorizer().fit_transform(docs)
        assert (X.toarray() >= 0).all()

    def test_identical_multisets_identical_rows(self):
        v = TfidfVectorizer().fit(["a b c", "c b"])
        X = v.transform(["b a c", "c a b"]).toarray()
        assert np.array_equal(X[0], X[1])

    def test_sklearn_params_roundtrip(self):
        v = TfidfVectorizer()
        assert v.get_params() == {}
