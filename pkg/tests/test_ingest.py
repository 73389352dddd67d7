import sys
import os
import math

run_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, run_dir)

import numpy as np
import pandas as pd
import pytest

from rankDrift.ingest import (
    IngestStats,
    UnigramIngestor,
    UnigramRecord,
    accumulate_counts,
    apply_completeness,
    build_lexicon,
    case_fold,
    consolidate,
    filter_records,
    fold_token,
    load_lexicon,
    merge_tables,
    parse_record,
    read_records,
    read_word_list,
    save_lexicon,
    strip_pos_suffix,
)
from rankDrift.utils import ConfigurationError, ParameterDomainError

FIXTURES = os.path.join(run_dir, "tests", "fixtures")
SHARDS = [os.path.join(FIXTURES, "ngrams", f"shard_{s}.tsv") for s in "abc"]
STOPWORDS = os.path.join(FIXTURES, "stopwords.txt")
SWADESH = os.path.join(FIXTURES, "swadesh.txt")


def _read_text(path):
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def test_parse_record():
    assert parse_record("word\t1999\t12\t3\n") == UnigramRecord("word", 1999, 12, 3)
    assert parse_record("too\tfew\n") is None
    assert parse_record("x\t2000\tmany\t3") is None
    assert parse_record("x\t2000\t0\t3") is None
    assert parse_record("\t2000\t1\t1") is None


def test_filter_records_threshold_is_inclusive():
    records = [
        UnigramRecord("a", 2000, 5, 3),
        UnigramRecord("b", 2000, 5, 2),
        UnigramRecord("c", 1999, 5, 9),
        UnigramRecord("d", 2002, 5, 9),
    ]
    stats = IngestStats()
    kept = list(filter_records(records, 3, (2000, 2002), stats))
    assert [r.token for r in kept] == ["a", "d"]
    assert (stats.retained, stats.filtered) == (2, 2)
    assert list(filter_records([], 3)) == []


def test_filter_records_ten_record_fixture():
    volumes = [1, 2, 2, 3, 4, 5, 6, 7, 8, 9]
    records = [UnigramRecord(f"w{i}", 2000, 10, v) for i, v in enumerate(volumes)]
    assert len(list(filter_records(records, 3))) == 7


def test_filter_records_validation():
    with pytest.raises(ParameterDomainError):
        list(filter_records([], 0))
    with pytest.raises(ParameterDomainError):
        list(filter_records([], 1, (2002, 2000)))


def test_fold_token():
    assert fold_token("SOLO") == "solo"
    assert fold_token("run_VERB") == "run"
    assert fold_token("Run_VERB") == "run"
    assert fold_token("THE_DET") == "the"
    assert fold_token("_NOUN") == ""


def test_strip_pos_suffix_splits_at_last_underscore():
    assert strip_pos_suffix("snake_case") == "snake"
    assert strip_pos_suffix("a_b_ADJ") == "a_b"
    assert strip_pos_suffix("plain") == "plain"
    assert fold_token("Snake_Case") == "snake"


def test_case_fold_is_idempotent():
    for token in ("Run", "THE", "Straße", "ΣΊΣΥΦΟΣ", "solo"):
        once = case_fold(token)
        assert case_fold(once) == once


def test_consolidate_merges_case_variants():
    records = [
        UnigramRecord("solo", 2000, 2, 5),
        UnigramRecord("Solo", 2000, 3, 5),
        UnigramRecord("SOLO", 2000, 1, 5),
    ]
    table = consolidate(records)
    assert table.loc["solo", 2000] == 6


def test_consolidate_drops_incomplete_words():
    records = [
        UnigramRecord("kept", 2000, 1, 1),
        UnigramRecord("kept", 2001, 1, 1),
        UnigramRecord("gone", 2000, 4, 1),
    ]
    stats = IngestStats()
    table = consolidate(records, stats)
    assert table.index.tolist() == ["kept"]
    assert stats.words_dropped == 1


def test_consolidate_is_order_independent():
    records = list(read_records(SHARDS))
    forward = consolidate(records)
    backward = consolidate(reversed(records))
    pd.testing.assert_frame_equal(forward, backward)


def test_merge_tables_commutative():
    tables = [accumulate_counts(read_records([path])) for path in SHARDS]
    merged = merge_tables(tables)
    pd.testing.assert_frame_equal(merged, merge_tables(tables[::-1]))
    pd.testing.assert_frame_equal(merged, merge_tables([merge_tables(tables[:2]), tables[2]]))
    assert merge_tables([]).empty


def test_read_records_counts_malformed():
    stats = IngestStats()
    records = list(read_records(SHARDS, stats))
    assert stats.read == 21
    assert stats.malformed == 3
    assert len(records) == 18


def test_read_records_missing_file():
    with pytest.raises(ConfigurationError):
        list(read_records([os.path.join(FIXTURES, "missing.tsv")]))


def test_read_word_list():
    assert read_word_list(STOPWORDS) == {"the", "a"}
    assert read_word_list(None) == set()
    with pytest.raises(ConfigurationError):
        read_word_list(os.path.join(FIXTURES, "missing.txt"))


def test_ingestor_fixture_shards(tmp_path):
    lexicon, stats = UnigramIngestor(min_volumes=3, year_range=(2000, 2002)).run(SHARDS, STOPWORDS, SWADESH)
    assert stats.to_dict() == {"read": 21, "malformed": 3, "filtered": 3, "retained": 15, "words_dropped": 1}
    assert lexicon.frequencies.words == ("run", "solo", "the", "water")
    assert lexicon.years == (2000, 2001, 2002)
    assert lexicon.c == 4
    assert lexicon.beta == 22
    assert lexicon.ln_beta == pytest.approx(math.log(22))
    assert lexicon.ratio == pytest.approx(4 / 22)
    assert lexicon.tag_counts() == {"is_stopword": 1, "is_swadesh": 1}
    path = str(tmp_path / "lexicon.csv")
    save_lexicon(lexicon, path)
    assert _read_text(path) == _read_text(os.path.join(FIXTURES, "expected_lexicon.csv"))


def test_ingestor_shard_order_independent(tmp_path):
    ingestor = UnigramIngestor(min_volumes=3, year_range=(2000, 2002))
    first, _ = ingestor.run(SHARDS, STOPWORDS, SWADESH)
    second, _ = ingestor.run(SHARDS[::-1], STOPWORDS, SWADESH)
    save_lexicon(first, str(tmp_path / "a.csv"))
    save_lexicon(second, str(tmp_path / "b.csv"))
    assert _read_text(str(tmp_path / "a.csv")) == _read_text(str(tmp_path / "b.csv"))


def test_empty_input_gives_empty_lexicon(tmp_path):
    empty = tmp_path / "empty.tsv"
    empty.write_text("", encoding="utf-8")
    lexicon, stats = UnigramIngestor().run([str(empty)])
    assert lexicon.c == 0
    assert stats.to_dict() == {"read": 0, "malformed": 0, "filtered": 0, "retained": 0, "words_dropped": 0}
    path = str(tmp_path / "lexicon.csv")
    save_lexicon(lexicon, path)
    assert _read_text(path) == "word,is_stopword,is_swadesh\n"


def test_build_lexicon_without_word_lists():
    table = apply_completeness(accumulate_counts([UnigramRecord("b", 1, 2, 1), UnigramRecord("a", 1, 3, 1)]))
    lexicon = build_lexicon(table)
    assert lexicon.frequencies.words == ("a", "b")
    assert lexicon.tag_counts() == {"is_stopword": 0, "is_swadesh": 0}
    np.testing.assert_array_equal(lexicon.frequencies.counts, [[3], [2]])


def test_load_lexicon_round_trip_keeps_literal_words(tmp_path):
    path = tmp_path / "lexicon.csv"
    path.write_text("word,is_stopword,is_swadesh,1900,1901\nnan,0,0,3,4\nnull,1,0,2,2\n", encoding="utf-8")
    lexicon = load_lexicon(str(path))
    assert lexicon.frequencies.words == ("nan", "null")
    assert lexicon.tags.loc["null", "is_stopword"]
    assert lexicon.years == (1900, 1901)


def test_load_lexicon_errors(tmp_path):
    with pytest.raises(ConfigurationError):
        load_lexicon(str(tmp_path / "missing.csv"))
    bad = tmp_path / "bad.csv"
    bad.write_text("token,x,y\na,0,0\n", encoding="utf-8")
    with pytest.raises(ConfigurationError):
        load_lexicon(str(bad))
