"""Data model and ingestion for cloze instances.

A dataset is a TSV file (UTF-8, header row, no quoting; embedded tabs and
newlines are forbidden) with columns::

    id  title  section_header  prev_context  sentence  next_context
    filler1..filler5  [label1..label5]  [score1..score5]

Labels are ``IMPLAUSIBLE`` / ``NEUTRAL`` / ``PLAUSIBLE``; scores are decimals
in [1, 5]. Label and score columns are optional; a predict-only file simply
omits them. Instances are immutable after loading and safe to share across
threads.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    BadLabelError,
    BadScoreError,
    MalformedRowError,
    MissingPlaceholderError,
    MultiplePlaceholdersError,
    WrongCandidateCountError,
)

#: The masked-slot marker inside a sentence.
PLACEHOLDER = "______"

N_CANDIDATES = 5

_BASE_COLUMNS = ["id", "title", "section_header", "prev_context", "sentence", "next_context"]
_FILLER_COLUMNS = [f"filler{i}" for i in range(1, N_CANDIDATES + 1)]
_LABEL_COLUMNS = [f"label{i}" for i in range(1, N_CANDIDATES + 1)]
_SCORE_COLUMNS = [f"score{i}" for i in range(1, N_CANDIDATES + 1)]


class Label(enum.IntEnum):
    """Plausibility class, ordered IMPLAUSIBLE < NEUTRAL < PLAUSIBLE."""

    IMPLAUSIBLE = 0
    NEUTRAL = 1
    PLAUSIBLE = 2

    @classmethod
    def from_string(cls, token: str, instance_id: str = "?") -> "Label":
        try:
            return cls[token.strip().upper()]
        except KeyError:
            raise BadLabelError(instance_id, token) from None


#: Ordinal score attached to each class, in class order.
LABEL_SCORES = (1.0, 3.0, 5.0)


def label_to_score(label: Label | int) -> float:
    """Map a class to its ordinal score: implausible 1, neutral 3, plausible 5."""
    return LABEL_SCORES[int(label)]


@dataclass(frozen=True)
class FillerCandidate:
    """One proposed filler for the masked slot, with optional gold annotations."""

    candidate_id: int
    text: str
    gold_label: Label | None = None
    gold_score: float | None = None

    def __post_init__(self):
        if not 1 <= self.candidate_id <= N_CANDIDATES:
            raise WrongCandidateCountError("?", f"candidate_id {self.candidate_id} outside 1..5")
        if not self.text or self.text.strip() == "":
            raise WrongCandidateCountError("?", f"candidate {self.candidate_id} has empty text")
        if "\t" in self.text or "\n" in self.text:
            raise WrongCandidateCountError(
                "?", f"candidate {self.candidate_id} text contains tab or newline"
            )
        if len(self.text.split()) > 2:
            raise WrongCandidateCountError(
                "?", f"candidate {self.candidate_id} text has more than two words"
            )
        if self.gold_score is not None and not (1.0 <= self.gold_score <= 5.0):
            raise BadScoreError(None, self.gold_score)


@dataclass(frozen=True)
class ClozeInstance:
    """One masked instructional sentence with context and its 5 candidates."""

    id: str
    title: str
    section_header: str
    prev_context: str
    masked_sentence: str
    next_context: str
    candidates: tuple[FillerCandidate, ...]

    def __post_init__(self):
        n = self.masked_sentence.count(PLACEHOLDER)
        if n == 0:
            raise MissingPlaceholderError(self.id)
        if n > 1:
            raise MultiplePlaceholdersError(self.id)
        if len(self.candidates) != N_CANDIDATES:
            raise WrongCandidateCountError(self.id, f"got {len(self.candidates)} candidates")
        ids = [c.candidate_id for c in self.candidates]
        if sorted(ids) != list(range(1, N_CANDIDATES + 1)):
            raise WrongCandidateCountError(self.id, f"candidate ids {ids} are not 1..5")


@dataclass(frozen=True)
class Dataset:
    """Ordered, immutable collection of cloze instances."""

    instances: tuple[ClozeInstance, ...]
    label_counts: dict[Label, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.instances)

    def pairs(self):
        """Yield (instance, candidate) in dataset order."""
        for instance in self.instances:
            for candidate in instance.candidates:
                yield instance, candidate

    def gold_labels(self) -> list[Label]:
        """Gold labels in pair order; raises if any pair is unlabeled."""
        labels = []
        for instance, candidate in self.pairs():
            if candidate.gold_label is None:
                raise BadLabelError(instance.id, "<missing>")
            labels.append(candidate.gold_label)
        return labels

    def gold_scores(self) -> list[float] | None:
        """Gold scores in pair order, or None if any pair lacks one."""
        scores = []
        for _, candidate in self.pairs():
            if candidate.gold_score is None:
                return None
            scores.append(candidate.gold_score)
        return scores


def _count_labels(instances) -> dict[Label, int]:
    counts = {label: 0 for label in Label}
    for instance in instances:
        for candidate in instance.candidates:
            if candidate.gold_label is not None:
                counts[candidate.gold_label] += 1
    return counts


def make_dataset(instances) -> Dataset:
    """Assemble a Dataset, computing per-class label counts."""
    instances = tuple(instances)
    return Dataset(instances=instances, label_counts=_count_labels(instances))


def _parse_score(raw: str, instance_id: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise BadScoreError(instance_id, raw) from None
    if not 1.0 <= value <= 5.0:
        raise BadScoreError(instance_id, value)
    return value


def load_dataset(path: str | Path, labeled: bool = True) -> Dataset:
    """Load a dataset TSV.

    With ``labeled=True`` the label columns must be present and every label
    must parse; with ``labeled=False`` label/score columns are read when
    present and left absent otherwise. Row order is preserved. Loading the
    same bytes twice yields identical datasets.
    """
    path = Path(path)
    with path.open("r", encoding="utf-8", newline="") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise MalformedRowError(1, "file is empty, expected a header row")

    header = lines[0].split("\t")
    expected_base = _BASE_COLUMNS + _FILLER_COLUMNS
    has_labels = header[: len(expected_base)] == expected_base and _LABEL_COLUMNS[0] in header
    valid_headers = [
        expected_base,
        expected_base + _LABEL_COLUMNS,
        expected_base + _LABEL_COLUMNS + _SCORE_COLUMNS,
    ]
    if header not in valid_headers:
        raise MalformedRowError(1, f"unexpected header columns {header}")
    if labeled and not has_labels:
        raise MalformedRowError(1, "labeled load requested but file has no label columns")
    has_scores = header == expected_base + _LABEL_COLUMNS + _SCORE_COLUMNS

    instances = []
    for line_no, line in enumerate(lines[1:], start=2):
        if line == "":
            continue
        cells = line.split("\t")
        if len(cells) != len(header):
            raise MalformedRowError(line_no, f"expected {len(header)} columns, got {len(cells)}")
        row = dict(zip(header, cells))
        instance_id = row["id"]
        try:
            candidates = []
            for i in range(1, N_CANDIDATES + 1):
                text = row[f"filler{i}"]
                if text.strip() == "":
                    raise WrongCandidateCountError(instance_id, f"filler{i} is empty")
                gold_label = None
                gold_score = None
                if has_labels:
                    gold_label = Label.from_string(row[f"label{i}"], instance_id)
                if has_scores:
                    gold_score = _parse_score(row[f"score{i}"], instance_id)
                candidates.append(
                    FillerCandidate(
                        candidate_id=i, text=text, gold_label=gold_label, gold_score=gold_score
                    )
                )
            instance = ClozeInstance(
                id=instance_id,
                title=row["title"],
                section_header=row["section_header"],
                prev_context=row["prev_context"],
                masked_sentence=row["sentence"],
                next_context=row["next_context"],
                candidates=tuple(candidates),
            )
        except (WrongCandidateCountError, BadScoreError) as err:
            # Re-raise with the instance id when the dataclass check lacked it.
            if isinstance(err, WrongCandidateCountError) and err.instance_id == "?":
                raise WrongCandidateCountError(instance_id, str(err)) from None
            if isinstance(err, BadScoreError) and err.instance_id is None:
                raise BadScoreError(instance_id, err.value) from None
            raise
        instances.append(instance)
    return make_dataset(instances)


def write_dataset(path: str | Path, dataset: Dataset) -> None:
    """Write a dataset back to the TSV format (labels/scores when present)."""
    any_label = any(c.gold_label is not None for _, c in dataset.pairs())
    any_score = any(c.gold_score is not None for _, c in dataset.pairs())
    header = _BASE_COLUMNS + _FILLER_COLUMNS
    if any_label:
        header = header + _LABEL_COLUMNS
    if any_score:
        # Score columns only exist after label columns in the format.
        if not any_label:
            raise BadScoreError(None, "scores present without labels")
        header = header + _SCORE_COLUMNS
    rows = ["\t".join(header)]
    for instance in dataset.instances:
        cells = [
            instance.id,
            instance.title,
            instance.section_header,
            instance.prev_context,
            instance.masked_sentence,
            instance.next_context,
        ]
        cells += [c.text for c in instance.candidates]
        if any_label:
            cells += [c.gold_label.name if c.gold_label is not None else "" for c in instance.candidates]
        if any_score:
            cells += [repr(c.gold_score) if c.gold_score is not None else "" for c in instance.candidates]
        rows.append("\t".join(cells))
    Path(path).write_text("\n".join(rows) + "\n", encoding="utf-8")
