"""Word-embedding tables, sentence averaging, and MLM-similarity scores.

The static table is a GloVe-style text file: first line ``<vocab> <dim>``,
then one ``token v1 ... vd`` row per word. An optional contextual file
(JSON-lines ``{"id", "candidate_id", "vector"}``) overrides the averaged
static vectors for specific (instance, candidate) pairs.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..corpus import ClozeInstance, FillerCandidate
from ..errors import (
    AllTokensOOVError,
    DimensionMismatchError,
    FileFormatError,
    InsufficientTopKError,
    ZeroVectorError,
)
from ..preprocess import ContextMethod, fill_placeholder, render_context, tokenize
from .mlm import VocabDistribution


@dataclass(frozen=True)
class EmbeddingTable:
    """token -> vector map with a single shared dimension."""

    dimension: int
    vectors: dict[str, np.ndarray]


def load_embedding_table(path: str | Path) -> EmbeddingTable:
    path = Path(path)
    with path.open("r", encoding="utf-8") as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise FileFormatError(str(path), 1, "expected '<vocab_size> <dimension>' header")
        try:
            size, dim = int(header[0]), int(header[1])
        except ValueError:
            raise FileFormatError(str(path), 1, "non-integer header fields") from None
        if dim <= 0:
            raise FileFormatError(str(path), 1, f"dimension {dim} not positive")
        vectors: dict[str, np.ndarray] = {}
        for line_no, line in enumerate(fh, start=2):
            parts = line.split()
            if not parts:
                continue
            if len(parts) != dim + 1:
                raise FileFormatError(
                    str(path), line_no, f"expected {dim} values, got {len(parts) - 1}"
                )
            vec = np.array([float(x) for x in parts[1:]], dtype=np.float64)
            if not np.all(np.isfinite(vec)):
                raise FileFormatError(str(path), line_no, "vector has NaN/Inf entries")
            vectors[parts[0]] = vec
    if len(vectors) != size:
        raise FileFormatError(str(path), 1, f"header says {size} vectors, file has {len(vectors)}")
    return EmbeddingTable(dimension=dim, vectors=vectors)


def write_embedding_table(path: str | Path, table: EmbeddingTable) -> None:
    lines = [f"{len(table.vectors)} {table.dimension}"]
    for token, vec in table.vectors.items():
        lines.append(token + " " + " ".join(repr(float(x)) for x in vec))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_contextual_embeddings(path: str | Path) -> dict[tuple[str, int], np.ndarray]:
    """Parse a contextual sentence-embedding JSONL file into a pair index."""
    path = Path(path)
    out: dict[tuple[str, int], np.ndarray] = {}
    with path.open("r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                obj = json.loads(line)
                key = (str(obj["id"]), int(obj["candidate_id"]))
                vec = np.array([float(x) for x in obj["vector"]], dtype=np.float64)
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as err:
                raise FileFormatError(str(path), line_no, f"bad record: {err}") from None
            if not np.all(np.isfinite(vec)):
                raise FileFormatError(str(path), line_no, "vector has NaN/Inf entries")
            out[key] = vec
    return out


def sentence_embedding(tokens: list[str], table: EmbeddingTable) -> np.ndarray:
    """Arithmetic mean of the vectors of in-vocabulary tokens (OOV skipped)."""
    hits = [table.vectors[t] for t in tokens if t in table.vectors]
    if not hits:
        raise AllTokensOOVError(tokens)
    return np.mean(hits, axis=0)


def cosine_similarity(u: np.ndarray, v: np.ndarray) -> float:
    """Cosine of the angle between two vectors, clamped to [-1, 1]."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise DimensionMismatchError(v.shape[0], u.shape[0])
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        raise ZeroVectorError()
    return float(np.clip(np.dot(u, v) / (nu * nv), -1.0, 1.0))


class SimilarityVariant(enum.Enum):
    TOP1 = "top1"
    WEIGHTED_TOP5 = "weighted_top5"
    MAX_TOP5 = "max_top5"


_VARIANT_NEEDS = {
    SimilarityVariant.TOP1: 1,
    SimilarityVariant.WEIGHTED_TOP5: 5,
    SimilarityVariant.MAX_TOP5: 5,
}


def similarity_score(
    variant: SimilarityVariant,
    dist: VocabDistribution,
    instance: ClozeInstance,
    candidate: FillerCandidate,
    method: ContextMethod,
    table: EmbeddingTable,
    renormalize: bool = True,
) -> float:
    """Embedding similarity between the candidate-filled context and the
    context filled with the MLM's top token(s).

    TOP1 compares against the single most probable token; the TOP5 variants
    compare against the five most probable tokens, combined either as a
    probability-weighted sum (weights renormalized over the five unless
    ``renormalize=False``) or as the maximum similarity.
    """
    need = _VARIANT_NEEDS[variant]
    if len(dist.topk) < need:
        raise InsufficientTopKError(len(dist.topk), need)

    masked = render_context(instance, method)
    e_cand = sentence_embedding(tokenize(fill_placeholder(masked, candidate.text)), table)

    sims = []
    weights = []
    for token, logit in dist.topk[:need]:
        e_top = sentence_embedding(tokenize(fill_placeholder(masked, token)), table)
        sims.append(cosine_similarity(e_cand, e_top))
        weights.append(math.exp(logit - dist.log_partition))

    if variant is SimilarityVariant.TOP1:
        return sims[0]
    if variant is SimilarityVariant.MAX_TOP5:
        return max(sims)
    if renormalize:
        total = sum(weights)
        weights = [w / total for w in weights]
    return float(sum(w * s for w, s in zip(weights, sims)))
