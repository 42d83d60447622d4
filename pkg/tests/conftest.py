import numpy as np
import pytest

from plausifill.corpus import ClozeInstance, FillerCandidate, Label, make_dataset


def make_candidates(texts, labels=None, scores=None):
    labels = labels or [None] * len(texts)
    scores = scores or [None] * len(texts)
    return tuple(
        FillerCandidate(candidate_id=i + 1, text=t, gold_label=l, gold_score=s)
        for i, (t, l, s) in enumerate(zip(texts, labels, scores))
    )


def make_instance(
    instance_id="i1",
    masked_sentence="Add ______ of water.",
    texts=("a cup", "salt", "two drops", "sand", "a galaxy"),
    labels=None,
    scores=None,
    title="Cook Rice",
    section="Steps",
    prev="Rinse it.",
    nxt="Boil.",
):
    return ClozeInstance(
        id=instance_id,
        title=title,
        section_header=section,
        prev_context=prev,
        masked_sentence=masked_sentence,
        next_context=nxt,
        candidates=make_candidates(texts, labels, scores),
    )


@pytest.fixture
def instance():
    return make_instance()


@pytest.fixture
def labeled_instance():
    return make_instance(
        labels=[Label.PLAUSIBLE, Label.NEUTRAL, Label.PLAUSIBLE, Label.IMPLAUSIBLE, Label.IMPLAUSIBLE],
        scores=[4.5, 3.0, 4.0, 1.5, 1.0],
    )


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def tiny_dataset():
    first = make_instance(
        instance_id="i1",
        labels=[Label.PLAUSIBLE, Label.NEUTRAL, Label.PLAUSIBLE, Label.IMPLAUSIBLE, Label.IMPLAUSIBLE],
        scores=[4.5, 3.0, 4.0, 1.5, 1.0],
    )
    second = make_instance(
        instance_id="i2",
        masked_sentence="Stir the ______ gently.",
        texts=("mixture", "batter", "contents", "anthem", "sorrow"),
        labels=[Label.PLAUSIBLE, Label.PLAUSIBLE, Label.NEUTRAL, Label.IMPLAUSIBLE, Label.IMPLAUSIBLE],
        scores=[4.8, 4.2, 2.9, 1.2, 1.6],
        title="Make Pancakes",
        prev="Crack the eggs.",
        nxt="Heat the pan.",
    )
    return make_dataset([first, second])
