"""Model id resolution: ``stub-*`` ids map to the fixed-weight fakes, every
other id is treated as a Hugging Face checkpoint (imported lazily, so the
stub path never touches torch)."""

from __future__ import annotations

import numpy as np

from plausifill.corpus import PLACEHOLDER

from .stubs import StubDiscriminator, StubEncoder, StubMaskedLM


class ExporterError(Exception):
    pass


class EncodeFailure(ExporterError):
    def __init__(self, instance_id: str, reason: str):
        self.instance_id = instance_id
        super().__init__(f"encoding failed for instance {instance_id!r}: {reason}")


def _require_transformers(model_id: str):
    try:
        import torch  # noqa: F401
        from transformers import AutoTokenizer  # noqa: F401
    except ImportError as err:
        raise ExporterError(
            f"model id {model_id!r} needs the [hf] extra (torch + transformers)"
        ) from err


class HfMaskedLM:
    """Full-vocabulary logits at the mask position of a pretrained MLM."""

    def __init__(self, model_id: str):
        _require_transformers(model_id)
        import torch
        from transformers import AutoModelForMaskedLM, AutoTokenizer

        self._torch = torch
        self.tokenizer = AutoTokenizer.from_pretrained(model_id)
        self.model = AutoModelForMaskedLM.from_pretrained(model_id).eval()
        vocab = self.tokenizer.get_vocab()
        self._id_to_token = {i: t for t, i in vocab.items()}

    def logits_for_mask(self, context_tokens: list[str]) -> dict[str, float]:
        text = " ".join(context_tokens).replace(PLACEHOLDER, self.tokenizer.mask_token)
        encoded = self.tokenizer(text, return_tensors="pt", truncation=True)
        mask_positions = (
            encoded["input_ids"][0] == self.tokenizer.mask_token_id
        ).nonzero(as_tuple=True)[0]
        if len(mask_positions) != 1:
            raise ExporterError(f"expected one mask token, found {len(mask_positions)}")
        with self._torch.no_grad():
            logits = self.model(**encoded).logits[0, mask_positions[0]]
        values = logits.double().cpu().numpy()
        return {self._id_to_token[i]: float(values[i]) for i in range(len(values))}

    def vocabulary_token(self, word: str) -> str | None:
        pieces = self.tokenizer.tokenize(word)
        if len(pieces) != 1:
            return None
        return pieces[0]


class HfEncoder:
    """Last-layer hidden states; each word is represented by its first
    word-piece vector."""

    def __init__(self, model_id: str):
        _require_transformers(model_id)
        import torch
        from transformers import AutoModel, AutoTokenizer

        self._torch = torch
        self.tokenizer = AutoTokenizer.from_pretrained(model_id)
        self.model = AutoModel.from_pretrained(model_id).eval()
        self.hidden_size = self.model.config.hidden_size

    def encode_words(self, words: list[str]) -> np.ndarray:
        encoded = self.tokenizer(
            words, is_split_into_words=True, return_tensors="pt", truncation=True
        )
        with self._torch.no_grad():
            states = self.model(**encoded).last_hidden_state[0]
        vectors = []
        word_ids = encoded.word_ids(0)
        seen = set()
        for pos, word_id in enumerate(word_ids):
            if word_id is None or word_id in seen:
                continue
            seen.add(word_id)
            vectors.append(states[pos].double().cpu().numpy())
        return np.stack(vectors)


class HfDiscriminator:
    """Replaced-token probabilities from an ELECTRA-style discriminator."""

    def __init__(self, model_id: str):
        _require_transformers(model_id)
        import torch
        from transformers import AutoModelForPreTraining, AutoTokenizer

        self._torch = torch
        self.tokenizer = AutoTokenizer.from_pretrained(model_id)
        self.model = AutoModelForPreTraining.from_pretrained(model_id).eval()

    def replaced_probabilities(self, words: list[str]) -> np.ndarray:
        encoded = self.tokenizer(
            words, is_split_into_words=True, return_tensors="pt", truncation=True
        )
        with self._torch.no_grad():
            logits = self.model(**encoded).logits[0]
        probs = self._torch.sigmoid(logits).double().cpu().numpy()
        word_ids = encoded.word_ids(0)
        out = []
        seen = set()
        for pos, word_id in enumerate(word_ids):
            if word_id is None or word_id in seen:
                continue
            seen.add(word_id)
            out.append(float(probs[pos]))
        return np.asarray(out)


def resolve_masked_lm(model_id: str):
    if model_id == "stub-mlm":
        return StubMaskedLM()
    return HfMaskedLM(model_id)


def resolve_encoder(model_id: str):
    if model_id == "stub-encoder":
        return StubEncoder()
    return HfEncoder(model_id)


def resolve_discriminator(model_id: str):
    if model_id == "stub-rtd":
        return StubDiscriminator()
    if model_id.startswith("stub-rtd:"):
        return StubDiscriminator(constant=float(model_id.split(":", 1)[1]))
    return HfDiscriminator(model_id)
