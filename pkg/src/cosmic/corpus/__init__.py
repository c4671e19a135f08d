"""Sci-fi corpus pipeline: normalization, dedup, filtering, segmentation,
theme grouping, and reference-library selection."""

from .dedup import deduplicate, jaccard, shingles
from .filters import filter_by_length
from .pipeline import (PipelineConfig, PipelineReport, build_corpus,
                       load_library, load_raw_items, run_pipeline,
                       save_library)
from .relevance import (group_by_theme, lexicon_hits, load_lexicon,
                        load_theme_lexicons, score_relevance)
from .segment import segment
from .select import DEFAULT_TARGET_COUNT, select_representatives
from .stats import corpus_stats, percentage, stats_from_counts
from .types import (LANGUAGES, SOURCE_GROUPS, CorpusStats, Fragment, RawItem,
                    ReferenceLibrary)

__all__ = [
    "CorpusStats", "DEFAULT_TARGET_COUNT", "Fragment", "LANGUAGES",
    "PipelineConfig", "PipelineReport", "RawItem", "ReferenceLibrary",
    "SOURCE_GROUPS", "build_corpus", "corpus_stats", "deduplicate",
    "filter_by_length", "group_by_theme", "jaccard", "lexicon_hits",
    "load_lexicon", "load_library", "load_raw_items", "load_theme_lexicons",
    "percentage", "run_pipeline", "save_library", "score_relevance",
    "segment", "select_representatives", "shingles", "stats_from_counts",
]
