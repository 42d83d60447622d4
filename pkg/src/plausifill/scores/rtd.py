"""Replaced-token-detection probabilities, precomputed per (instance, candidate).

File format: TSV rows ``instance_id<TAB>candidate_id<TAB>probability`` with
probabilities in [0, 1]. Lines starting with ``#`` are skipped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from ..errors import FileFormatError, MissingScoreError


@dataclass(frozen=True)
class RtdTable:
    """(instance_id, candidate_id) -> replaced probability."""

    probabilities: dict[tuple[str, int], float] = field(default_factory=dict)


def load_rtd_file(path: str | Path) -> RtdTable:
    path = Path(path)
    probs: dict[tuple[str, int], float] = {}
    with path.open("r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            cells = line.split("\t")
            if len(cells) != 3:
                raise FileFormatError(str(path), line_no, f"expected 3 columns, got {len(cells)}")
            try:
                key = (cells[0], int(cells[1]))
                p = float(cells[2])
            except ValueError as err:
                raise FileFormatError(str(path), line_no, f"bad row: {err}") from None
            if not 0.0 <= p <= 1.0:
                raise FileFormatError(str(path), line_no, f"probability {p} outside [0, 1]")
            if key in probs:
                raise FileFormatError(str(path), line_no, f"duplicate pair {key}")
            probs[key] = p
    return RtdTable(probabilities=probs)


def write_rtd_file(path: str | Path, table: RtdTable, header_comment: str | None = None) -> None:
    lines = []
    if header_comment is not None:
        lines.append("# " + header_comment)
    for (instance_id, candidate_id), p in sorted(table.probabilities.items()):
        lines.append(f"{instance_id}\t{candidate_id}\t{p!r}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def rtd_lookup(table: RtdTable, instance_id: str, candidate_id: int) -> float:
    """Stored replaced-token probability for one pair."""
    try:
        return table.probabilities[(instance_id, candidate_id)]
    except KeyError:
        raise MissingScoreError(instance_id, candidate_id) from None
