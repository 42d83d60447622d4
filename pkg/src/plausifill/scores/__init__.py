"""Raw-signal sources and the translations that turn them into features."""

from .embeddings import (
    EmbeddingTable,
    SimilarityVariant,
    cosine_similarity,
    load_contextual_embeddings,
    load_embedding_table,
    sentence_embedding,
    similarity_score,
    write_embedding_table,
)
from .matrix import (
    MlmLogitSource,
    MlmSoftmaxSource,
    NgramSource,
    RtdSource,
    ScoreMatrix,
    SentenceEmbeddingSource,
    SimilaritySource,
    assemble_score_matrix,
)
from .mlm import (
    VocabDistribution,
    load_scores_file,
    logit_score,
    softmax_prob,
    topk_softmax_probs,
    write_scores_file,
)
from .ngrams import (
    BOUNDARY_END,
    BOUNDARY_START,
    NgramTable,
    NgramTransform,
    load_ngram_table,
    ngram_frequency,
    ngram_to_feature,
    slot_gram,
    write_ngram_table,
)
from .ranking import pairwise_ranking_loss
from .rtd import RtdTable, load_rtd_file, rtd_lookup, write_rtd_file
from .tfidf import TfidfVectorizer

__all__ = [
    "BOUNDARY_END",
    "BOUNDARY_START",
    "EmbeddingTable",
    "MlmLogitSource",
    "MlmSoftmaxSource",
    "NgramSource",
    "NgramTable",
    "NgramTransform",
    "RtdSource",
    "RtdTable",
    "ScoreMatrix",
    "SentenceEmbeddingSource",
    "SimilaritySource",
    "SimilarityVariant",
    "TfidfVectorizer",
    "VocabDistribution",
    "assemble_score_matrix",
    "cosine_similarity",
    "load_contextual_embeddings",
    "load_embedding_table",
    "load_ngram_table",
    "load_rtd_file",
    "load_scores_file",
    "logit_score",
    "ngram_frequency",
    "ngram_to_feature",
    "pairwise_ranking_loss",
    "rtd_lookup",
    "sentence_embedding",
    "similarity_score",
    "slot_gram",
    "softmax_prob",
    "topk_softmax_probs",
    "write_embedding_table",
    "write_ngram_table",
    "write_rtd_file",
    "write_scores_file",
]
