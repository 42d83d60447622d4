import math

import numpy as np
import pytest

from plausifill.errors import FileFormatError, UnknownCandidateError
from plausifill.scores.mlm import (
    VocabDistribution,
    load_scores_file,
    logit_score,
    softmax_prob,
    topk_softmax_probs,
    write_scores_file,
)


def full_vocab_dist(instance_id, token_logits, candidate_logits):
    """Distribution whose topk IS the whole vocabulary."""
    logits = [l for _, l in token_logits]
    log_partition = float(np.logaddexp.reduce(logits))
    topk = tuple(sorted(token_logits, key=lambda tl: (-tl[1], tl[0])))
    return VocabDistribution(
        instance_id=instance_id,
        topk=topk,
        log_partition=log_partition,
        candidate_logits=candidate_logits,
    )


class TestLogitScore:
    def test_passthrough(self):
        dist = full_vocab_dist("i1", [("a", 4.2)], {1: 4.2})
        assert logit_score(dist, 1) == 4.2

    def test_unknown_candidate(self):
        dist = full_vocab_dist("i1", [("a", 4.2)], {1: 4.2})
        with pytest.raises(UnknownCandidateError):
            logit_score(dist, 3)

    def test_file_roundtrip_bit_identical(self, tmp_path):
        rng = np.random.default_rng(7)
        logits = sorted(rng.normal(size=8).tolist(), reverse=True)
        tokens = [f"w{i}" for i in range(8)]
        dist = full_vocab_dist(
            "i9", list(zip(tokens, logits)), {c: logits[c] for c in range(1, 6)}
        )
        path = tmp_path / "scores.jsonl"
        write_scores_file(path, [dist], header_comment="model=test")
        loaded = load_scores_file(path)["i9"]
        for c in range(1, 6):
            assert logit_score(loaded, c) == logit_score(dist, c)
        assert loaded.log_partition == dist.log_partition
        assert loaded.topk == dist.topk


class TestSoftmaxProb:
    def test_uniform_four_tokens(self):
        dist = VocabDistribution("i1", (("a", 0.0), ("b", 0.0)), math.log(4.0), {1: 0.0})
        assert softmax_prob(dist, 1) == pytest.approx(0.25, abs=1e-12)

    def test_degenerate_full_mass(self):
        dist = VocabDistribution("i1", (("a", 1.0),), 1.0, {1: 1.0})
        assert softmax_prob(dist, 1) == 1.0

    def test_three_logit_vocabulary(self):
        dist = full_vocab_dist("i1", [("a", 1.0), ("b", 2.0), ("c", 3.0)], {1: 2.0})
        direct = math.exp(2.0) / (math.exp(1.0) + math.exp(2.0) + math.exp(3.0))
        assert softmax_prob(dist, 1) == pytest.approx(direct, abs=1e-12)
        assert softmax_prob(dist, 1) == pytest.approx(0.2447, abs=1e-4)

    def test_sums_to_one_over_full_vocab(self, rng):
        for _ in range(20):
            logits = rng.normal(size=10).tolist()
            dist = full_vocab_dist(
                "x", [(f"w{i}", l) for i, l in enumerate(logits)], {1: logits[0]}
            )
            total = sum(topk_softmax_probs(dist, len(dist.topk)))
            assert total == pytest.approx(1.0, abs=1e-9)

    def test_ranking_agrees_with_logits(self, rng):
        for _ in range(20):
            logits = {c: float(rng.normal()) for c in range(1, 6)}
            dist = full_vocab_dist(
                "x",
                [(f"w{i}", rng.normal()) for i in range(6)] + [("cand", max(logits.values()))],
                logits,
            )
            by_logit = sorted(logits, key=lambda c: logit_score(dist, c))
            by_prob = sorted(logits, key=lambda c: softmax_prob(dist, c))
            assert by_logit == by_prob


class TestFileValidation:
    def good_line(self):
        return (
            '{"id": "i1", "k": 5, "log_partition": 3.5, '
            '"topk": [["e", 3.0], ["d", 2.0], ["c", 1.0], ["b", 0.5], ["a", 0.1]], '
            '"candidates": {"1": 3.0, "2": 0.1}}'
        )

    def write(self, tmp_path, text):
        path = tmp_path / "s.jsonl"
        path.write_text(text + "\n", encoding="utf-8")
        return path

    def test_comment_lines_skipped(self, tmp_path):
        path = self.write(tmp_path, "# model=bert-large\n" + self.good_line())
        assert "i1" in load_scores_file(path)

    def test_non_descending_rejected(self, tmp_path):
        bad = self.good_line().replace('["d", 2.0]', '["d", 3.5]')
        with pytest.raises(FileFormatError):
            load_scores_file(self.write(tmp_path, bad))

    def test_tie_must_be_lexicographic(self, tmp_path):
        # Equal logits with tokens out of lexicographic order ("d" before "c").
        bad = (
            '{"id": "i1", "k": 5, "log_partition": 3.5, '
            '"topk": [["e", 3.0], ["d", 1.0], ["c", 1.0], ["b", 0.5], ["a", 0.1]], '
            '"candidates": {"1": 3.0}}'
        )
        with pytest.raises(FileFormatError):
            load_scores_file(self.write(tmp_path, bad))

    def test_candidate_above_partition_rejected(self, tmp_path):
        bad = self.good_line().replace('"1": 3.0', '"1": 9.0')
        with pytest.raises(FileFormatError):
            load_scores_file(self.write(tmp_path, bad))

    def test_topk_mass_above_one_rejected(self, tmp_path):
        bad = self.good_line().replace('"log_partition": 3.5', '"log_partition": 0.0')
        with pytest.raises(FileFormatError):
            load_scores_file(self.write(tmp_path, bad))

    def test_k_mismatch_rejected(self, tmp_path):
        bad = self.good_line().replace('"k": 5', '"k": 9')
        with pytest.raises(FileFormatError):
            load_scores_file(self.write(tmp_path, bad))

    def test_short_topk_rejected(self, tmp_path):
        bad = (
            '{"id": "i1", "k": 2, "log_partition": 3.5, '
            '"topk": [["e", 3.0], ["d", 2.0]], "candidates": {"1": 3.0}}'
        )
        with pytest.raises(FileFormatError):
            load_scores_file(self.write(tmp_path, bad))

    def test_duplicate_id_rejected(self, tmp_path):
        with pytest.raises(FileFormatError):
            load_scores_file(self.write(tmp_path, self.good_line() + "\n" + self.good_line()))

    def test_bad_json_rejected(self, tmp_path):
        with pytest.raises(FileFormatError) as err:
            load_scores_file(self.write(tmp_path, "{not json"))
        assert err.value.line_no == 1
