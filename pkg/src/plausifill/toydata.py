"""Deterministic synthetic fixture: a 40-instance training set, a
20-instance dev set, and matching precomputed score files.

The generator wires a known signal into every source so the bundled files
support end-to-end runs: candidate logits rise with the gold plausibility
score, slot-gram counts are near zero for implausible fillers, and RTD
probabilities fall with plausibility. Per instance the label mix is fixed
at 2 implausible / 1 neutral / 2 plausible, so the training file counts are
exactly 80 / 40 / 80.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .corpus import Dataset, FillerCandidate, ClozeInstance, Label, make_dataset, write_dataset
from .preprocess import ContextMethod, mlm_adjust_filler, render_context, tokenize
from .scores.embeddings import EmbeddingTable, write_embedding_table
from .scores.mlm import VocabDistribution, write_scores_file
from .scores.ngrams import NgramTable, slot_gram, write_ngram_table
from .scores.rtd import RtdTable, write_rtd_file

N_TRAIN = 40
N_DEV = 20
TOP_K = 10
EMBED_DIM = 16

# Pools are arranged so that, within any template, the MLM-adjusted tokens
# (second word of two-word fillers) never collide across candidates.
_TEMPLATES = [
    {
        "title": "Make Pancakes", "section": "Steps",
        "prev": "Whisk the eggs and milk together.",
        "sentence": "Pour the ______ into the hot pan.",
        "next": "Flip once bubbles appear.",
        "plausible": ["batter", "mixture", "the mix", "some dough"],
        "neutral": ["contents", "the filling", "result"],
    },
    {
        "title": "Cook Rice", "section": "Preparation",
        "prev": "Rinse the rice until the water runs clear.",
        "sentence": "Add two cups of ______ to the pot.",
        "next": "Bring it to a boil.",
        "plausible": ["water", "broth", "the stock", "coconut milk"],
        "neutral": ["fluid", "something", "the usual"],
    },
    {
        "title": "Plant a Tree", "section": "Digging",
        "prev": "Pick a spot with good drainage.",
        "sentence": "Dig a ______ twice as wide as the root ball.",
        "next": "Loosen the soil at the bottom.",
        "plausible": ["hole", "pit", "a trench", "round crater"],
        "neutral": ["space", "area", "an opening"],
    },
    {
        "title": "Paint a Wall", "section": "Preparation",
        "prev": "Cover the floor with a drop cloth.",
        "sentence": "______ the surface before applying primer.",
        "next": "Let it dry for an hour.",
        "plausible": ["sand", "clean", "wipe", "scrub"],
        "neutral": ["check", "inspect", "touch"],
    },
    {
        "title": "Brew Coffee", "section": "Steps",
        "prev": "Grind the beans to a medium texture.",
        "sentence": "Place a ______ in the basket.",
        "next": "Pour in the grounds evenly.",
        "plausible": ["filter", "paper liner", "small cone", "fine mesh"],
        "neutral": ["sheet", "insert", "a layer"],
    },
    {
        "title": "Change a Tire", "section": "Safety",
        "prev": "Park on a flat stretch of road.",
        "sentence": "Loosen the ______ before lifting the car.",
        "next": "Raise the jack slowly.",
        "plausible": ["lug nuts", "bolts", "fasteners", "the studs"],
        "neutral": ["parts", "fittings", "the hardware"],
    },
    {
        "title": "Bake Bread", "section": "Proofing",
        "prev": "Knead the dough for ten minutes.",
        "sentence": "Cover the bowl with a damp ______ and wait.",
        "next": "The dough should double in size.",
        "plausible": ["towel", "cloth", "a rag", "linen"],
        "neutral": ["cover", "layer", "wrap"],
    },
    {
        "title": "Wash a Car", "section": "Steps",
        "prev": "Rinse off the loose dirt first.",
        "sentence": "Fill a bucket with ______ and car soap.",
        "next": "Work from the roof down.",
        "plausible": ["water", "suds", "cleaner", "shampoo"],
        "neutral": ["liquid", "the contents", "more"],
    },
    {
        "title": "Sharpen a Knife", "section": "Technique",
        "prev": "Soak the whetstone for five minutes.",
        "sentence": "Hold the blade at a shallow ______ against the stone.",
        "next": "Draw it across in smooth strokes.",
        "plausible": ["angle", "tilt", "slant", "a pitch"],
        "neutral": ["position", "line", "a setting"],
    },
    {
        "title": "Grow Tomatoes", "section": "Care",
        "prev": "Water the seedlings every morning.",
        "sentence": "Tie each stem to a ______ for support.",
        "next": "Prune the lower leaves weekly.",
        "plausible": ["stake", "trellis", "wooden post", "garden cane"],
        "neutral": ["support", "frame", "a rod"],
    },
]

_IMPLAUSIBLE_WORDS = [
    "galaxy", "sorrow", "parliament", "tornado", "algebra", "pigeon",
    "jealousy", "glacier", "opera", "bankruptcy", "comet", "nostalgia",
    "the moon", "a sermon", "gravity", "folklore", "a verdict", "plutonium",
    "daydream", "the tide", "rhetoric", "a fossil", "laughter", "an anthem",
]

_DISTRACTOR_WORDS = [
    "thing", "stuff", "item", "piece", "part", "bit", "object", "element",
    "tool", "device", "surface", "corner", "edge", "middle", "top", "bottom",
    "side", "handle", "lid", "rim", "base", "strip", "patch", "knob",
    "drop", "dash", "pinch", "scoop", "slice", "chunk", "bundle", "stack",
    "sponge", "brush", "board", "tray", "bowl", "cup", "jar", "pan",
    "rope", "wire", "tape", "glue", "nail", "screw", "clamp", "hook",
]


def _draw_score(rng: np.random.Generator, label: Label) -> float:
    if label is Label.IMPLAUSIBLE:
        return round(float(rng.uniform(1.0, 2.1)), 2)
    if label is Label.NEUTRAL:
        return round(float(rng.uniform(2.7, 3.3)), 2)
    return round(float(rng.uniform(4.0, 5.0)), 2)


def _make_instances(rng: np.random.Generator, count: int, prefix: str) -> list[ClozeInstance]:
    instances = []
    for i in range(count):
        template = _TEMPLATES[i % len(_TEMPLATES)]
        plo = rng.choice(len(template["plausible"]), size=2, replace=False)
        neu = int(rng.integers(len(template["neutral"])))
        imp = rng.choice(len(_IMPLAUSIBLE_WORDS), size=2, replace=False)
        picks = [
            (template["plausible"][plo[0]], Label.PLAUSIBLE),
            (template["plausible"][plo[1]], Label.PLAUSIBLE),
            (template["neutral"][neu], Label.NEUTRAL),
            (_IMPLAUSIBLE_WORDS[imp[0]], Label.IMPLAUSIBLE),
            (_IMPLAUSIBLE_WORDS[imp[1]], Label.IMPLAUSIBLE),
        ]
        order = rng.permutation(5)
        candidates = tuple(
            FillerCandidate(
                candidate_id=slot + 1,
                text=picks[k][0],
                gold_label=picks[k][1],
                gold_score=_draw_score(rng, picks[k][1]),
            )
            for slot, k in enumerate(order)
        )
        instances.append(
            ClozeInstance(
                id=f"{prefix}{i + 1:03d}",
                title=template["title"],
                section_header=template["section"],
                prev_context=template["prev"],
                masked_sentence=template["sentence"],
                next_context=template["next"],
                candidates=candidates,
            )
        )
    return instances


def _make_distributions(rng: np.random.Generator, instances) -> list[VocabDistribution]:
    dists = []
    for instance in instances:
        cand_tokens = {
            candidate.candidate_id: tokenize(mlm_adjust_filler(candidate.text))[0]
            for candidate in instance.candidates
        }
        taken = set(cand_tokens.values())
        pool = [w for w in _DISTRACTOR_WORDS if w not in taken]
        distractors = [pool[j] for j in rng.choice(len(pool), size=35, replace=False)]

        vocab: list[tuple[str, float]] = []
        candidate_logits = {}
        for candidate in instance.candidates:
            logit = 1.3 * (candidate.gold_score - 3.0) + float(rng.normal(0.0, 0.9))
            candidate_logits[candidate.candidate_id] = logit
            vocab.append((cand_tokens[candidate.candidate_id], logit))
        for word in distractors:
            vocab.append((word, float(rng.normal(-1.0, 1.2))))

        logits = np.array([l for _, l in vocab])
        log_partition = float(np.logaddexp.reduce(logits))
        topk = sorted(vocab, key=lambda tl: (-tl[1], tl[0]))[:TOP_K]
        dists.append(
            VocabDistribution(
                instance_id=instance.id,
                topk=tuple(topk),
                log_partition=log_partition,
                candidate_logits=candidate_logits,
            ).validate(min_k=TOP_K)
        )
    return dists


def _make_ngram_table(rng: np.random.Generator, instances) -> NgramTable:
    counts: dict[tuple[str, ...], int] = {}
    for instance in instances:
        for candidate in instance.candidates:
            gram = slot_gram(instance, candidate)
            if gram in counts:
                continue
            label = candidate.gold_label
            if label is Label.IMPLAUSIBLE:
                count = 0 if rng.random() < 0.7 else int(rng.integers(1, 8))
            elif label is Label.NEUTRAL:
                count = int(rng.integers(2, 30))
            else:
                count = int(rng.integers(6, 90))
            if count > 0:
                counts[gram] = count
    # Background grams that no slot ever queries.
    for _ in range(30):
        w = [_DISTRACTOR_WORDS[int(rng.integers(len(_DISTRACTOR_WORDS)))] for _ in range(3)]
        gram = (w[0], w[1], w[2])
        if gram not in counts:
            counts[gram] = int(rng.integers(1, 50))
    return NgramTable(counts=counts)


def _make_rtd_table(rng: np.random.Generator, instances) -> RtdTable:
    probs = {}
    for instance in instances:
        for candidate in instance.candidates:
            p = 1.0 - (candidate.gold_score - 1.0) / 4.0 + float(rng.normal(0.0, 0.08))
            probs[(instance.id, candidate.candidate_id)] = float(np.clip(p, 0.005, 0.995))
    return RtdTable(probabilities=probs)


def _make_embedding_table(rng: np.random.Generator, instances, dists) -> EmbeddingTable:
    vocab: set[str] = set()
    for instance in instances:
        vocab.update(tokenize(render_context(instance, ContextMethod.FULL)))
        for candidate in instance.candidates:
            vocab.update(tokenize(candidate.text))
    for dist in dists:
        vocab.update(token for token, _ in dist.topk)
    vocab.discard("______")
    vectors = {
        token: rng.normal(0.0, 0.25, size=EMBED_DIM) for token in sorted(vocab)
    }
    return EmbeddingTable(dimension=EMBED_DIM, vectors=vectors)


def generate_toy_files(out_dir: str | Path, seed: int = 0) -> dict[str, Path]:
    """Write the bundled toy fixture into ``out_dir``; returns the paths.

    Emits ``toy_train.tsv`` (40 instances), ``toy_dev.tsv`` (20 instances),
    and score files covering both: ``toy_mlm.jsonl``, ``toy_ngrams.tsv``,
    ``toy_rtd.tsv``, ``toy_embeddings.txt``.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)

    train = _make_instances(rng, N_TRAIN, "t")
    dev = _make_instances(rng, N_DEV, "d")
    everything = train + dev

    dists = _make_distributions(rng, everything)
    ngrams = _make_ngram_table(rng, everything)
    rtd = _make_rtd_table(rng, everything)
    table = _make_embedding_table(rng, everything, dists)

    paths = {
        "train": out_dir / "toy_train.tsv",
        "dev": out_dir / "toy_dev.tsv",
        "mlm": out_dir / "toy_mlm.jsonl",
        "ngrams": out_dir / "toy_ngrams.tsv",
        "rtd": out_dir / "toy_rtd.tsv",
        "embeddings": out_dir / "toy_embeddings.txt",
    }
    write_dataset(paths["train"], make_dataset(train))
    write_dataset(paths["dev"], make_dataset(dev))
    write_scores_file(paths["mlm"], dists, header_comment=f"model=toy-mlm k={TOP_K} seed={seed}")
    write_ngram_table(paths["ngrams"], ngrams)
    write_rtd_file(paths["rtd"], rtd, header_comment=f"model=toy-rtd seed={seed}")
    write_embedding_table(paths["embeddings"], table)
    return paths


def toy_train_dataset(seed: int = 0) -> Dataset:
    """The bundled 40-instance dataset, in memory."""
    rng = np.random.default_rng(seed)
    return make_dataset(_make_instances(rng, N_TRAIN, "t"))
