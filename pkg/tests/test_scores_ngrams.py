import math

import pytest

from plausifill.errors import FileFormatError, MissingScoreError
from plausifill.scores.ngrams import (
    BOUNDARY_END,
    BOUNDARY_START,
    NgramTable,
    NgramTransform,
    load_ngram_table,
    ngram_frequency,
    ngram_to_feature,
    slot_gram,
    write_ngram_table,
)
from plausifill.scores.rtd import RtdTable, load_rtd_file, rtd_lookup, write_rtd_file

from conftest import make_instance


def add_salt_instance(**kw):
    return make_instance(
        masked_sentence=kw.pop("masked_sentence", "add ______ now"),
        texts=kw.pop("texts", ("salt", "pepper", "sea salt", "foam", "dust")),
        **kw,
    )


class TestNgramFrequency:
    def setup_method(self):
        self.table = NgramTable(counts={("add", "salt", "now"): 7})
        self.instance = add_salt_instance()

    def test_lookup_hit(self):
        assert ngram_frequency(self.table, self.instance, self.instance.candidates[0]) == 7

    def test_lookup_miss(self):
        assert ngram_frequency(self.table, self.instance, self.instance.candidates[1]) == 0

    def test_two_word_filler_quadrigram(self):
        table = NgramTable(counts={("add", "sea", "salt", "now"): 3})
        assert ngram_frequency(table, self.instance, self.instance.candidates[2]) == 3
        assert slot_gram(self.instance, self.instance.candidates[2]) == (
            "add", "sea", "salt", "now",
        )

    def test_boundary_padding_start(self):
        instance = add_salt_instance(masked_sentence="______ the pan")
        assert slot_gram(instance, instance.candidates[0]) == (BOUNDARY_START, "salt", "the")

    def test_boundary_padding_end(self):
        instance = add_salt_instance(masked_sentence="heat the ______")
        assert slot_gram(instance, instance.candidates[0]) == ("the", "salt", BOUNDARY_END)

    def test_punctuation_around_slot(self):
        instance = add_salt_instance(masked_sentence="Add ______, now!")
        assert slot_gram(instance, instance.candidates[0]) == ("add", "salt", "now")

    def test_lookup_matches_table_scan(self, rng):
        words = ["a", "b", "c", "d", "e"]
        counts = {}
        for _ in range(30):
            gram = tuple(words[i] for i in rng.integers(0, len(words), size=3))
            counts[gram] = int(rng.integers(1, 50))
        table = NgramTable(counts=counts)
        for _ in range(50):
            left, right = (words[i] for i in rng.integers(0, len(words), size=2))
            filler = words[int(rng.integers(0, len(words)))]
            instance = add_salt_instance(
                masked_sentence=f"{left} ______ {right}", texts=(filler, "x", "y", "z", "q")
            )
            brute = sum(
                count for gram, count in counts.items() if gram == (left, filler, right)
            )
            assert ngram_frequency(table, instance, instance.candidates[0]) == brute


class TestNgramToFeature:
    def test_zero(self):
        assert ngram_to_feature(0, NgramTransform.LOG1P) == 0.0
        assert ngram_to_feature(0, NgramTransform.RAW) == 0.0

    def test_log1p_of_one(self):
        assert ngram_to_feature(1, NgramTransform.LOG1P) == pytest.approx(math.log(2), abs=1e-12)

    def test_raw_passthrough(self):
        assert ngram_to_feature(42, NgramTransform.RAW) == 42.0

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            ngram_to_feature(-1, NgramTransform.RAW)


class TestNgramFiles:
    def test_roundtrip(self, tmp_path):
        table = NgramTable(counts={("a", "b", "c"): 5, ("a", "b", "c", "d"): 2})
        path = tmp_path / "ngrams.tsv"
        write_ngram_table(path, table)
        assert load_ngram_table(path).counts == table.counts

    def test_wrong_arity_rejected(self, tmp_path):
        path = tmp_path / "bad.tsv"
        path.write_text("a\tb\t9\n", encoding="utf-8")
        with pytest.raises(FileFormatError):
            load_ngram_table(path)

    def test_negative_count_rejected(self, tmp_path):
        path = tmp_path / "bad.tsv"
        path.write_text("a\tb\tc\t-2\n", encoding="utf-8")
        with pytest.raises(FileFormatError):
            load_ngram_table(path)

    def test_duplicate_rows_accumulate(self, tmp_path):
        path = tmp_path / "dup.tsv"
        path.write_text("a\tb\tc\t2\na\tb\tc\t3\n", encoding="utf-8")
        assert load_ngram_table(path).counts[("a", "b", "c")] == 5


class TestRtd:
    def test_lookup(self):
        table = RtdTable(probabilities={("i7", 2): 0.91})
        assert rtd_lookup(table, "i7", 2) == 0.91

    def test_missing(self):
        with pytest.raises(MissingScoreError):
            rtd_lookup(RtdTable(), "i7", 2)

    def test_roundtrip_bit_identical(self, tmp_path, rng):
        table = RtdTable(
            probabilities={(f"i{k}", c): float(rng.random()) for k in range(4) for c in range(1, 6)}
        )
        path = tmp_path / "rtd.tsv"
        write_rtd_file(path, table, header_comment="model=electra")
        loaded = load_rtd_file(path)
        assert loaded.probabilities == table.probabilities

    def test_out_of_range_rejected(self, tmp_path):
        path = tmp_path / "bad.tsv"
        path.write_text("i1\t1\t1.5\n", encoding="utf-8")
        with pytest.raises(FileFormatError):
            load_rtd_file(path)
