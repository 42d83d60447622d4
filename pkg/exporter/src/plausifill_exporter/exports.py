"""The three export jobs: MLM top-K logits with an exact log partition,
contextual sentence embeddings, and replaced-token probabilities.

All exporters read the dataset TSV of the main package, render context with
its preprocessing rules, and emit files byte-compatible with its parsers.
Output lines are sorted by instance id so files are canonical, and every
file opens with a ``#`` comment naming the model (the parsers skip it).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from plausifill.corpus import PLACEHOLDER, load_dataset
from plausifill.preprocess import (
    ContextMethod,
    fill_placeholder,
    mlm_adjust_filler,
    render_context,
    tokenize,
)
from plausifill.scores.mlm import VocabDistribution, write_scores_file
from plausifill.scores.rtd import RtdTable, write_rtd_file

from .backends import (
    EncodeFailure,
    ExporterError,
    resolve_discriminator,
    resolve_encoder,
    resolve_masked_lm,
)

MIN_TOP_K = 5


@dataclass(frozen=True)
class ExportJob:
    dataset_path: str
    model_id: str
    output_path: str
    context_method: ContextMethod = ContextMethod.FULL
    top_k: int = 50

    def __post_init__(self):
        if self.top_k < MIN_TOP_K:
            raise ExporterError(f"top_k must be >= {MIN_TOP_K}, got {self.top_k}")

    def header(self) -> str:
        return f"model={self.model_id} method={self.context_method.value} k={self.top_k}"


def export_mlm(job: ExportJob, backend=None) -> tuple[Path, Path]:
    """Write the MLM scores JSONL plus a sidecar listing candidates the
    model cannot score as a single token. Returns (scores_path, sidecar)."""
    backend = backend or resolve_masked_lm(job.model_id)
    dataset = load_dataset(job.dataset_path, labeled=False)

    distributions = []
    oov_rows = []
    for instance in sorted(dataset.instances, key=lambda i: i.id):
        context_tokens = tokenize(render_context(instance, job.context_method))
        logit_map = backend.logits_for_mask(context_tokens)
        logits = np.fromiter(logit_map.values(), dtype=np.float64)
        log_partition = float(np.logaddexp.reduce(logits))
        topk = tuple(
            sorted(logit_map.items(), key=lambda tl: (-tl[1], tl[0]))[: job.top_k]
        )

        candidate_logits = {}
        for candidate in instance.candidates:
            word = mlm_adjust_filler(candidate.text)
            token = backend.vocabulary_token(word)
            if token is None or token not in logit_map:
                oov_rows.append(
                    f"{instance.id}\t{candidate.candidate_id}\t{candidate.text}\tnot a single vocabulary token"
                )
                continue
            candidate_logits[candidate.candidate_id] = logit_map[token]

        distributions.append(
            VocabDistribution(
                instance_id=instance.id,
                topk=topk,
                log_partition=log_partition,
                candidate_logits=candidate_logits,
            ).validate(min_k=MIN_TOP_K)
        )

    out = Path(job.output_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_scores_file(out, distributions, header_comment=job.header())
    sidecar = out.with_name(out.name + ".oov.tsv")
    sidecar.write_text(
        "\n".join(["instance_id\tcandidate_id\tfiller\treason", *oov_rows]) + "\n",
        encoding="utf-8",
    )
    return out, sidecar


def export_embeddings(job: ExportJob, backend=None) -> Path:
    """Write contextual sentence embeddings: per (instance, candidate), the
    mean of per-word last-layer vectors of the candidate-filled context."""
    backend = backend or resolve_encoder(job.model_id)
    dataset = load_dataset(job.dataset_path, labeled=False)

    lines = ["# " + job.header()]
    for instance in sorted(dataset.instances, key=lambda i: i.id):
        masked = render_context(instance, job.context_method)
        for candidate in instance.candidates:
            words = tokenize(fill_placeholder(masked, candidate.text))
            try:
                vectors = backend.encode_words(words)
            except ExporterError:
                raise
            except Exception as err:
                raise EncodeFailure(instance.id, str(err)) from err
            mean = np.mean(vectors, axis=0)
            lines.append(
                json.dumps(
                    {
                        "id": instance.id,
                        "candidate_id": candidate.candidate_id,
                        "vector": [float(x) for x in mean],
                    },
                    sort_keys=True,
                )
            )

    out = Path(job.output_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return out


def _filler_position(masked: str, filler: str) -> tuple[list[str], int]:
    """Filled token list and the index of the filler's scored word (the
    last filler token, matching the two-word MLM adjustment)."""
    before, _ = masked.split(PLACEHOLDER, 1)
    filler_tokens = tokenize(filler)
    position = len(tokenize(before)) + len(filler_tokens) - 1
    words = tokenize(fill_placeholder(masked, filler))
    expected = filler_tokens[-1] if filler_tokens else None
    if expected is None or position >= len(words) or words[position] != expected:
        # Placeholder glued to other characters; fall back to a search.
        if expected is not None and expected in words:
            position = words.index(expected)
        else:
            raise EncodeFailure("?", f"cannot locate filler {filler!r} in filled text")
    return words, position


def export_rtd(job: ExportJob, backend=None) -> Path:
    """Write the probability that the filler word's position was replaced,
    one TSV row per (instance, candidate)."""
    backend = backend or resolve_discriminator(job.model_id)
    dataset = load_dataset(job.dataset_path, labeled=False)

    probabilities = {}
    for instance in sorted(dataset.instances, key=lambda i: i.id):
        masked = render_context(instance, job.context_method)
        for candidate in instance.candidates:
            try:
                words, position = _filler_position(masked, candidate.text)
                probs = backend.replaced_probabilities(words)
            except EncodeFailure as err:
                raise EncodeFailure(instance.id, str(err)) from None
            p = float(probs[position])
            if not 0.0 <= p <= 1.0:
                raise EncodeFailure(instance.id, f"probability {p} outside [0, 1]")
            probabilities[(instance.id, candidate.candidate_id)] = p

    out = Path(job.output_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_rtd_file(out, RtdTable(probabilities=probabilities), header_comment=job.header())
    return out
