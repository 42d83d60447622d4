"""Model-input text construction around the masked slot.

Three context methods control how much of the instance surrounds the masked
sentence; filling and the two-word filler adjustment are the building blocks
every score source shares.
"""

from __future__ import annotations

import enum
import string

from .corpus import PLACEHOLDER, ClozeInstance
from .errors import MultiplePlaceholdersError, NoPlaceholderError, TooManyWordsError


class ContextMethod(enum.Enum):
    """How much surrounding text goes into the model input."""

    FULL = "full"                  # title + section header + prev + sentence + next
    CONTEXT_ONLY = "context_only"  # prev + sentence + next
    SENTENCE_ONLY = "sentence_only"


_SENTENCE_END = (".", "!", "?")


def _join_sentencewise(parts: list[str]) -> str:
    """Join parts with ". ", or a single space when the left part already
    ends in sentence punctuation. Empty parts are skipped."""
    out = ""
    for part in parts:
        if part == "":
            continue
        if out == "":
            out = part
        elif out.rstrip().endswith(_SENTENCE_END):
            out = out + " " + part
        else:
            out = out + ". " + part
    return out


def render_context(instance: ClozeInstance, method: ContextMethod) -> str:
    """Build the masked model-input text for one instance."""
    if method is ContextMethod.FULL:
        parts = [
            instance.title,
            instance.section_header,
            instance.prev_context,
            instance.masked_sentence,
            instance.next_context,
        ]
    elif method is ContextMethod.CONTEXT_ONLY:
        parts = [instance.prev_context, instance.masked_sentence, instance.next_context]
    else:
        parts = [instance.masked_sentence]
    return _join_sentencewise(parts)


def fill_placeholder(masked_text: str, filler: str) -> str:
    """Replace the single placeholder with the filler, byte-for-byte otherwise."""
    n = masked_text.count(PLACEHOLDER)
    if n == 0:
        raise NoPlaceholderError()
    if n > 1:
        raise MultiplePlaceholdersError()
    return masked_text.replace(PLACEHOLDER, filler)


def mlm_adjust_filler(filler: str) -> str:
    """Reduce a filler to the single word an MLM can score.

    Two-word fillers keep only their second word ("My book" -> "book");
    one-word fillers pass through unchanged.
    """
    words = filler.split()
    if len(words) > 2:
        raise TooManyWordsError(filler)
    return words[-1]


# Everything in string.punctuation except "_", so the placeholder token and
# snake_case-ish words survive edge stripping.
_STRIP_CHARS = "".join(c for c in string.punctuation if c != "_")


def tokenize(text: str) -> list[str]:
    """Lowercase whitespace tokenizer with edge punctuation stripped.

    Empty tokens are dropped; the placeholder survives as its own token.
    """
    tokens = []
    for raw in text.lower().split():
        token = raw.strip(_STRIP_CHARS)
        if token:
            tokens.append(token)
    return tokens
