"""Tiny fixed-weight fake models so contract tests never download weights.

Every stub derives its parameters from a CRC32 of the token, so outputs are
stable across processes and machines. The masked-LM stub vocabulary covers
the bundled toy fixture of the main package (plus a little generic
instruction vocabulary), which keeps stub exports usable end to end.
"""

from __future__ import annotations

import zlib

import numpy as np

STUB_HIDDEN_SIZE = 8

# Filler words used by the main package's toy fixture, their two-word
# remainders, and assorted instruction-domain words.
STUB_VOCABULARY = sorted({
    # plausible/neutral filler tokens
    "batter", "mixture", "mix", "dough", "contents", "filling", "result",
    "water", "broth", "stock", "milk", "fluid", "something", "usual",
    "hole", "pit", "trench", "crater", "space", "area", "opening",
    "sand", "clean", "wipe", "scrub", "check", "inspect", "touch",
    "filter", "liner", "cone", "mesh", "sheet", "insert", "layer",
    "nuts", "bolts", "fasteners", "studs", "parts", "fittings", "hardware",
    "towel", "cloth", "rag", "linen", "cover", "wrap",
    "suds", "cleaner", "shampoo", "liquid", "more",
    "angle", "tilt", "slant", "pitch", "position", "line", "setting",
    "stake", "trellis", "post", "cane", "support", "frame", "rod",
    # implausible filler tokens
    "galaxy", "sorrow", "parliament", "tornado", "algebra", "pigeon",
    "jealousy", "glacier", "opera", "bankruptcy", "comet", "nostalgia",
    "moon", "sermon", "gravity", "folklore", "verdict", "plutonium",
    "daydream", "tide", "rhetoric", "fossil", "laughter", "anthem",
    # generic instruction words
    "book", "table", "salt", "pepper", "sugar", "flour", "oil", "butter",
    "bowl", "cup", "pan", "pot", "lid", "knife", "spoon", "brush",
    "thing", "stuff", "item", "piece", "part", "bit", "object", "element",
    "tool", "device", "surface", "corner", "edge", "middle", "top", "bottom",
    "side", "handle", "rim", "base", "strip", "patch", "knob",
    "drop", "dash", "pinch", "scoop", "slice", "chunk", "bundle", "stack",
    "sponge", "board", "tray", "jar", "rope", "wire", "tape", "glue",
    "nail", "screw", "clamp", "hook",
})


def _token_rng(token: str, salt: int) -> np.random.Generator:
    return np.random.default_rng(zlib.crc32(token.encode("utf-8")) ^ salt)


class StubMaskedLM:
    """Masked LM with one fixed base logit per vocabulary word plus a small
    boost for words already present in the context."""

    CONTEXT_BOOST = 0.4

    def __init__(self, vocabulary=None, overrides=None):
        self.vocabulary = list(vocabulary) if vocabulary is not None else list(STUB_VOCABULARY)
        self.base_logits = {
            word: float(_token_rng(word, 0xA11CE).normal(0.0, 1.5))
            for word in self.vocabulary
        }
        if overrides:
            self.base_logits.update(overrides)

    def logits_for_mask(self, context_tokens: list[str]) -> dict[str, float]:
        present = set(context_tokens)
        return {
            word: base + (self.CONTEXT_BOOST if word in present else 0.0)
            for word, base in self.base_logits.items()
        }

    def vocabulary_token(self, word: str) -> str | None:
        """The vocabulary entry a word maps to, or None when out of vocab."""
        lowered = word.lower()
        return lowered if lowered in self.base_logits else None


class StubEncoder:
    """Per-word vectors fixed by token hash; one piece per word, so the
    first-word-piece rule is the identity here."""

    hidden_size = STUB_HIDDEN_SIZE

    def encode_words(self, words: list[str]) -> np.ndarray:
        if not words:
            raise ValueError("cannot encode an empty word sequence")
        return np.stack([self.word_vector(w) for w in words])

    def word_vector(self, word: str) -> np.ndarray:
        return _token_rng(word.lower(), 0xE14C0DE).normal(0.0, 1.0, size=self.hidden_size)


class StubDiscriminator:
    """Per-word replaced-token probabilities, fixed by token hash, or a
    constant when one is supplied."""

    def __init__(self, constant: float | None = None):
        if constant is not None and not 0.0 <= constant <= 1.0:
            raise ValueError(f"constant probability {constant} outside [0, 1]")
        self.constant = constant

    def replaced_probabilities(self, words: list[str]) -> np.ndarray:
        if self.constant is not None:
            return np.full(len(words), self.constant)
        raw = np.array([
            float(_token_rng(w.lower(), 0xD15C).uniform(0.02, 0.98)) for w in words
        ])
        return raw
