"""N-gram count table and the around-the-slot frequency lookup.

Counts come from a TSV of ``w1<TAB>w2<TAB>w3[<TAB>w4]<TAB>count`` rows. A
one-word filler forms a trigram (previous word, filler, next word); a
two-word filler forms a quadrigram. When the slot sits at a sentence edge
the gram is padded with ``<s>`` / ``</s>``. Absent grams count as zero.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from pathlib import Path

from ..corpus import PLACEHOLDER, ClozeInstance, FillerCandidate
from ..errors import FileFormatError
from ..preprocess import tokenize

BOUNDARY_START = "<s>"
BOUNDARY_END = "</s>"


@dataclass(frozen=True)
class NgramTable:
    """Immutable tri/quadrigram -> count map (absent means zero)."""

    counts: dict[tuple[str, ...], int] = field(default_factory=dict)

    def lookup(self, gram: tuple[str, ...]) -> int:
        return self.counts.get(gram, 0)


def load_ngram_table(path: str | Path) -> NgramTable:
    path = Path(path)
    counts: dict[tuple[str, ...], int] = {}
    with path.open("r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            cells = line.split("\t")
            if len(cells) not in (4, 5):
                raise FileFormatError(
                    str(path), line_no, f"expected 3 or 4 words plus a count, got {len(cells)} cells"
                )
            try:
                count = int(cells[-1])
            except ValueError:
                raise FileFormatError(str(path), line_no, f"bad count {cells[-1]!r}") from None
            if count < 0:
                raise FileFormatError(str(path), line_no, f"negative count {count}")
            gram = tuple(cells[:-1])
            counts[gram] = counts.get(gram, 0) + count
    return NgramTable(counts=counts)


def write_ngram_table(path: str | Path, table: NgramTable) -> None:
    lines = []
    for gram in sorted(table.counts):
        lines.append("\t".join(gram) + "\t" + str(table.counts[gram]))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def slot_gram(instance: ClozeInstance, candidate: FillerCandidate) -> tuple[str, ...]:
    """The tri- or quadrigram formed by the slot's neighbors and the filler."""
    tokens = tokenize(instance.masked_sentence)
    idx = next((i for i, t in enumerate(tokens) if PLACEHOLDER in t), None)
    if idx is None:
        # Placeholder glued to punctuation beyond what stripping removes;
        # treat the whole sentence as context-free.
        prev_tok, next_tok = BOUNDARY_START, BOUNDARY_END
    else:
        prev_tok = tokens[idx - 1] if idx > 0 else BOUNDARY_START
        next_tok = tokens[idx + 1] if idx + 1 < len(tokens) else BOUNDARY_END
    filler_tokens = tokenize(candidate.text)
    return (prev_tok, *filler_tokens, next_tok)


def ngram_frequency(table: NgramTable, instance: ClozeInstance, candidate: FillerCandidate) -> int:
    """Corpus count of the gram around the slot; 0 when absent or degenerate."""
    gram = slot_gram(instance, candidate)
    if len(gram) not in (3, 4):
        return 0
    return table.lookup(gram)


class NgramTransform(enum.Enum):
    RAW = "raw"
    LOG1P = "log1p"


def ngram_to_feature(count: int, transform: NgramTransform) -> float:
    """Turn a raw count into a feature value (``ln(1 + count)`` by default)."""
    if count < 0:
        raise ValueError(f"count {count} must be non-negative")
    if transform is NgramTransform.RAW:
        return float(count)
    return math.log1p(count)
