"""Precomputed masked-LM vocabulary distributions and their score translations.

The scores file is JSON-lines, one object per instance::

    {"id": ..., "k": K, "log_partition": ...,
     "topk": [[token, logit], ...], "candidates": {"1": logit, ..., "5": logit}}

Lines starting with ``#`` are skipped (exporters put the model id there).
``log_partition`` is the log-sum-exp of the logits over the *full* model
vocabulary, so softmax probabilities recovered from the file are exact even
though only the top K tokens are stored. Logits round-trip bit-exactly
through JSON (shortest-repr float serialization).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from ..errors import FileFormatError, UnknownCandidateError

_TOPK_SUM_SLACK = 1e-6
_CANDIDATE_MASS_SLACK = 1e-9
MIN_FILE_TOPK = 5


@dataclass(frozen=True)
class VocabDistribution:
    """MLM output for one masked slot: top-K (token, logit) pairs in strictly
    descending order, the full-vocabulary log partition, and the logit of
    each of the five candidates."""

    instance_id: str
    topk: tuple[tuple[str, float], ...]
    log_partition: float
    candidate_logits: Mapping[int, float] = field(default_factory=dict)

    def validate(self, min_k: int = 1) -> "VocabDistribution":
        """Check ordering and probability-mass invariants; returns self."""
        if len(self.topk) < min_k:
            raise FileFormatError(
                self.instance_id, 0, f"topk has {len(self.topk)} entries, need >= {min_k}"
            )
        for (tok_a, logit_a), (tok_b, logit_b) in zip(self.topk, self.topk[1:]):
            descending = logit_a > logit_b or (logit_a == logit_b and tok_a < tok_b)
            if not descending:
                raise FileFormatError(
                    self.instance_id, 0,
                    f"topk not strictly descending at {tok_a!r} -> {tok_b!r}",
                )
        for cand, logit in self.candidate_logits.items():
            if logit > self.log_partition + _CANDIDATE_MASS_SLACK:
                raise FileFormatError(
                    self.instance_id, 0,
                    f"candidate {cand} logit {logit} exceeds log partition",
                )
        mass = sum(math.exp(logit - self.log_partition) for _, logit in self.topk)
        if mass > 1.0 + _TOPK_SUM_SLACK:
            raise FileFormatError(
                self.instance_id, 0, f"topk probability mass {mass} exceeds 1"
            )
        return self


def logit_score(dist: VocabDistribution, candidate_id: int) -> float:
    """Raw logit of a candidate, unchanged."""
    try:
        return dist.candidate_logits[candidate_id]
    except KeyError:
        raise UnknownCandidateError(dist.instance_id, candidate_id) from None


def softmax_prob(dist: VocabDistribution, candidate_id: int) -> float:
    """Exact full-vocabulary softmax probability of a candidate."""
    logit = logit_score(dist, candidate_id)
    return min(math.exp(logit - dist.log_partition), 1.0)


def topk_softmax_probs(dist: VocabDistribution, k: int) -> list[float]:
    """Full-vocabulary softmax probabilities of the first k top tokens."""
    return [min(math.exp(logit - dist.log_partition), 1.0) for _, logit in dist.topk[:k]]


def load_scores_file(path: str | Path) -> dict[str, VocabDistribution]:
    """Parse a scores JSONL file into a per-instance index, validating every
    distribution (K >= 5 for files)."""
    path = Path(path)
    out: dict[str, VocabDistribution] = {}
    with path.open("r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as err:
                raise FileFormatError(str(path), line_no, f"bad JSON: {err}") from None
            try:
                dist = VocabDistribution(
                    instance_id=str(obj["id"]),
                    topk=tuple((str(t), float(l)) for t, l in obj["topk"]),
                    log_partition=float(obj["log_partition"]),
                    candidate_logits={int(k): float(v) for k, v in obj["candidates"].items()},
                )
            except (KeyError, TypeError, ValueError) as err:
                raise FileFormatError(str(path), line_no, f"bad record: {err}") from None
            if "k" in obj and int(obj["k"]) != len(dist.topk):
                raise FileFormatError(
                    str(path), line_no, f"k={obj['k']} but topk has {len(dist.topk)} entries"
                )
            try:
                dist.validate(min_k=MIN_FILE_TOPK)
            except FileFormatError as err:
                raise FileFormatError(str(path), line_no, err.reason) from None
            if dist.instance_id in out:
                raise FileFormatError(
                    str(path), line_no, f"duplicate instance id {dist.instance_id!r}"
                )
            out[dist.instance_id] = dist
    return out


def write_scores_file(
    path: str | Path,
    dists: list[VocabDistribution],
    header_comment: str | None = None,
) -> None:
    """Serialize distributions as JSONL, full float precision, sorted keys."""
    lines = []
    if header_comment is not None:
        lines.append("# " + header_comment)
    for dist in dists:
        obj = {
            "id": dist.instance_id,
            "k": len(dist.topk),
            "log_partition": dist.log_partition,
            "topk": [[token, logit] for token, logit in dist.topk],
            "candidates": {str(k): v for k, v in sorted(dist.candidate_logits.items())},
        }
        lines.append(json.dumps(obj, sort_keys=True))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
