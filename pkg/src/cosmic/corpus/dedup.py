"""Exact and near-duplicate removal over normalized items.

Near-duplicate detection is character-shingle Jaccard: language-agnostic,
so Chinese text needs no tokenizer.  The pass is greedy in input order —
an item is dropped when its similarity to any already-kept item reaches
the threshold — which keeps the first occurrence and preserves order.
"""

from __future__ import annotations

from .types import RawItem
from ..errors import ConfigurationError

DEFAULT_SHINGLE_SIZE = 5


def shingles(text: str, n: int = DEFAULT_SHINGLE_SIZE) -> frozenset[str]:
    """Character n-gram set of ``text`` (empty when shorter than n)."""
    if len(text) < n:
        return frozenset()
    return frozenset(text[i:i + n] for i in range(len(text) - n + 1))


def jaccard(a: frozenset[str], b: frozenset[str]) -> float:
    """Set-overlap ratio; 0.0 when either set is empty (exact equality of
    very short texts is handled by the exact-duplicate stage instead)."""
    if not a or not b:
        return 0.0
    return len(a & b) / len(a | b)


def deduplicate(
    items: list[RawItem],
    near_dup_threshold: float = 0.85,
    shingle_size: int = DEFAULT_SHINGLE_SIZE,
) -> list[RawItem]:
    """Drop exact duplicates, then near-duplicates at the given threshold.

    First occurrences win and output preserves input order.  Running the
    pass on its own output changes nothing.
    """
    if not 0.0 <= near_dup_threshold <= 1.0:
        raise ConfigurationError(
            f"near_dup_threshold must be in [0, 1], got {near_dup_threshold}")

    kept: list[RawItem] = []
    kept_texts: set[str] = set()
    kept_shingles: list[frozenset[str]] = []

    for item in items:
        if item.text in kept_texts:
            continue
        sh = shingles(item.text, shingle_size)
        if any(jaccard(sh, other) >= near_dup_threshold for other in kept_shingles):
            continue
        kept.append(item)
        kept_texts.add(item.text)
        kept_shingles.append(sh)
    return kept
