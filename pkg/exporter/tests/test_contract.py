"""Contract tests: everything the exporters emit must parse cleanly in the
main package, and stub-model numbers must match independent hand
recomputation."""

import json
import math

import numpy as np
import pytest

from plausifill.corpus import load_dataset
from plausifill.preprocess import (
    ContextMethod,
    fill_placeholder,
    render_context,
    tokenize,
)
from plausifill.scores import (
    load_contextual_embeddings,
    load_rtd_file,
    load_scores_file,
    rtd_lookup,
    softmax_prob,
)
from plausifill_exporter import (
    ExportJob,
    ExporterError,
    StubEncoder,
    StubMaskedLM,
    export_embeddings,
    export_mlm,
    export_rtd,
)


def job_for(dataset_path, tmp_path, model="stub-mlm", out="out.jsonl", **kw):
    return ExportJob(
        dataset_path=str(dataset_path),
        model_id=model,
        output_path=str(tmp_path / out),
        **kw,
    )


class TestExportMlm:
    def test_file_parses_and_softmax_matches_direct_summation(self, dataset_path, tmp_path):
        job = job_for(dataset_path, tmp_path, top_k=20)
        path, _ = export_mlm(job)
        dists = load_scores_file(path)  # zero parse errors
        assert set(dists) == {"a1", "a2"}

        # Independent oracle: direct summation over the stub's own logits.
        stub = StubMaskedLM()
        for instance in load_dataset(dataset_path, labeled=False).instances:
            tokens = tokenize(render_context(instance, ContextMethod.FULL))
            logit_map = stub.logits_for_mask(tokens)
            denominator = sum(math.exp(v) for v in logit_map.values())
            dist = dists[instance.id]
            for candidate in instance.candidates:
                cid = candidate.candidate_id
                if cid not in dist.candidate_logits:
                    continue
                word = candidate.text.split()[-1].lower()
                direct = math.exp(logit_map[word]) / denominator
                assert softmax_prob(dist, cid) == pytest.approx(direct, abs=1e-9)

    def test_two_word_candidate_scored_on_second_word(self, dataset_path, tmp_path):
        path, _ = export_mlm(job_for(dataset_path, tmp_path))
        dists = load_scores_file(path)
        stub = StubMaskedLM()
        tokens = tokenize(
            render_context(load_dataset(dataset_path, labeled=False).instances[0], ContextMethod.FULL)
        )
        logit_map = stub.logits_for_mask(tokens)
        # candidate 3 is "My book", candidate 5 is "The table".
        assert dists["a1"].candidate_logits[3] == logit_map["book"]
        assert dists["a1"].candidate_logits[5] == logit_map["table"]

    def test_requested_k_is_emitted(self, dataset_path, tmp_path):
        path, _ = export_mlm(job_for(dataset_path, tmp_path, top_k=5))
        for dist in load_scores_file(path).values():
            assert len(dist.topk) == 5

    def test_topk_ties_break_lexicographically(self, dataset_path, tmp_path):
        stub = StubMaskedLM(
            vocabulary=["zeta", "beta", "alpha", "mid", "low", "lower"],
            overrides={"zeta": 2.0, "beta": 2.0, "alpha": 2.0, "mid": 1.0, "low": 0.5, "lower": 0.1},
        )
        path, _ = export_mlm(job_for(dataset_path, tmp_path, top_k=5), backend=stub)
        first = next(iter(load_scores_file(path).values()))
        assert [t for t, _ in first.topk[:3]] == ["alpha", "beta", "zeta"]

    def test_oov_candidates_reported_not_dropped(self, oov_dataset_path, tmp_path):
        path, sidecar = export_mlm(job_for(oov_dataset_path, tmp_path))
        dists = load_scores_file(path)
        assert 1 not in dists["a1"].candidate_logits  # the OOV filler
        assert 2 in dists["a1"].candidate_logits
        report = sidecar.read_text().strip().splitlines()
        assert report[0] == "instance_id\tcandidate_id\tfiller\treason"
        assert any(row.startswith("a1\t1\tzzzunknownzzz") for row in report[1:])

    def test_lines_sorted_by_instance_id(self, dataset_path, tmp_path):
        path, _ = export_mlm(job_for(dataset_path, tmp_path))
        ids = [
            json.loads(line)["id"]
            for line in path.read_text().splitlines()
            if line and not line.startswith("#")
        ]
        assert ids == sorted(ids)

    def test_deterministic(self, dataset_path, tmp_path):
        a, _ = export_mlm(job_for(dataset_path, tmp_path, out="a.jsonl"))
        b, _ = export_mlm(job_for(dataset_path, tmp_path, out="b.jsonl"))
        assert a.read_bytes() == b.read_bytes()

    def test_small_k_rejected(self, dataset_path, tmp_path):
        with pytest.raises(ExporterError):
            job_for(dataset_path, tmp_path, top_k=3)


class TestExportEmbeddings:
    def test_file_parses_and_averages_match_hand_oracle(self, dataset_path, tmp_path):
        job = job_for(dataset_path, tmp_path, model="stub-encoder", out="emb.jsonl")
        path = export_embeddings(job)
        vectors = load_contextual_embeddings(path)  # zero parse errors

        stub = StubEncoder()
        dataset = load_dataset(dataset_path, labeled=False)
        assert len(vectors) == 5 * len(dataset)
        for instance in dataset.instances:
            masked = render_context(instance, ContextMethod.FULL)
            for candidate in instance.candidates:
                words = tokenize(fill_placeholder(masked, candidate.text))
                expected = np.mean([stub.word_vector(w) for w in words], axis=0)
                got = vectors[(instance.id, candidate.candidate_id)]
                assert np.max(np.abs(got - expected)) < 1e-9

    def test_dimension_is_hidden_size(self, dataset_path, tmp_path):
        path = export_embeddings(
            job_for(dataset_path, tmp_path, model="stub-encoder", out="emb.jsonl")
        )
        for vec in load_contextual_embeddings(path).values():
            assert len(vec) == StubEncoder.hidden_size

    def test_identical_filled_sentences_identical_vectors(self, tmp_path):
        header = (
            "id\ttitle\tsection_header\tprev_context\tsentence\tnext_context\t"
            "filler1\tfiller2\tfiller3\tfiller4\tfiller5"
        )
        # Same sentence and same filler set in both instances.
        row = "X\tT\tS\tP.\tUse a ______ here.\tN.\twater\tbroth\ttowel\tcloth\tlinen"
        data = tmp_path / "dup.tsv"
        data.write_text(
            "\n".join([header, row, row.replace("X", "Y", 1)]) + "\n", encoding="utf-8"
        )
        path = export_embeddings(
            job_for(data, tmp_path, model="stub-encoder", out="emb.jsonl",
                    context_method=ContextMethod.SENTENCE_ONLY)
        )
        vectors = load_contextual_embeddings(path)
        for c in range(1, 6):
            assert np.array_equal(vectors[("X", c)], vectors[("Y", c)])


class TestExportRtd:
    def test_file_parses_and_lookup_roundtrips(self, dataset_path, tmp_path):
        path = export_rtd(job_for(dataset_path, tmp_path, model="stub-rtd", out="rtd.tsv"))
        table = load_rtd_file(path)  # zero parse errors
        dataset = load_dataset(dataset_path, labeled=False)
        for instance, candidate in dataset.pairs():
            p = rtd_lookup(table, instance.id, candidate.candidate_id)
            assert 0.0 <= p <= 1.0

    def test_constant_stub_emits_constant(self, dataset_path, tmp_path):
        path = export_rtd(job_for(dataset_path, tmp_path, model="stub-rtd:0.5", out="rtd.tsv"))
        table = load_rtd_file(path)
        assert set(table.probabilities.values()) == {0.5}

    def test_probability_is_at_fillers_position(self, dataset_path, tmp_path):
        from plausifill_exporter.backends import resolve_discriminator

        path = export_rtd(job_for(dataset_path, tmp_path, model="stub-rtd", out="rtd.tsv"))
        table = load_rtd_file(path)
        stub = resolve_discriminator("stub-rtd")
        instance = load_dataset(dataset_path, labeled=False).instances[0]
        masked = render_context(instance, ContextMethod.FULL)
        candidate = instance.candidates[2]  # "My book" -> scored at "book"
        words = tokenize(fill_placeholder(masked, candidate.text))
        position = words.index("book")
        expected = stub.replaced_probabilities(words)[position]
        assert table.probabilities[(instance.id, 3)] == pytest.approx(expected, abs=1e-15)


class TestToyFixtureEndToEnd:
    def test_all_three_exports_parse_on_the_bundled_toy_data(self, tmp_path):
        from plausifill.toydata import generate_toy_files

        toy = generate_toy_files(tmp_path / "toy", seed=0)
        mlm_path, sidecar = export_mlm(job_for(toy["train"], tmp_path, top_k=10))
        emb_path = export_embeddings(
            job_for(toy["train"], tmp_path, model="stub-encoder", out="emb.jsonl")
        )
        rtd_path = export_rtd(
            job_for(toy["train"], tmp_path, model="stub-rtd", out="rtd.tsv")
        )
        dists = load_scores_file(mlm_path)
        assert len(dists) == 40
        # The stub vocabulary covers every toy filler.
        assert sidecar.read_text().strip().splitlines()[1:] == []
        assert len(load_contextual_embeddings(emb_path)) == 200
        assert len(load_rtd_file(rtd_path).probabilities) == 200

    def test_stub_exports_drive_a_full_experiment(self, tmp_path):
        from plausifill.experiment import ExperimentConfig, run_experiment
        from plausifill.toydata import generate_toy_files

        toy = generate_toy_files(tmp_path / "toy", seed=0)
        train_scores, _ = export_mlm(
            job_for(toy["train"], tmp_path, top_k=10, out="train_scores.jsonl")
        )
        dev_scores, _ = export_mlm(
            job_for(toy["dev"], tmp_path, top_k=10, out="dev_scores.jsonl")
        )
        merged = tmp_path / "scores.jsonl"
        merged.write_text(
            train_scores.read_text() + dev_scores.read_text(), encoding="utf-8"
        )
        config = ExperimentConfig.from_dict({
            "name": "stub_softmax",
            "train_dataset": str(toy["train"]),
            "dev_dataset": str(toy["dev"]),
            "sources": [{"type": "mlm_softmax", "path": str(merged)}],
            "head": "gaussian_nb",
            "output_dir": str(tmp_path / "exp"),
        })
        report = run_experiment(config)
        assert report.n == 100
