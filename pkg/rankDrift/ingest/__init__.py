from .unigram_ingest import (
    strip_pos_suffix,
    case_fold,
    UnigramRecord,
    IngestStats,
    Lexicon,
    UnigramIngestor,
    parse_record,
    read_records,
    filter_records,
    fold_token,
    accumulate_counts,
    merge_tables,
    apply_completeness,
    consolidate,
    read_word_list,
    build_lexicon,
    save_lexicon,
    load_lexicon,
)

__all__ = [
    "strip_pos_suffix",
    "case_fold",
    "UnigramRecord",
    "IngestStats",
    "Lexicon",
    "UnigramIngestor",
    "parse_record",
    "read_records",
    "filter_records",
    "fold_token",
    "accumulate_counts",
    "merge_tables",
    "apply_completeness",
    "consolidate",
    "read_word_list",
    "build_lexicon",
    "save_lexicon",
    "load_lexicon",
]
