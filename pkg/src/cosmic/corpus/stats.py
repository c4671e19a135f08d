"""Per-source-group counts and percentages."""

from __future__ import annotations

from decimal import ROUND_HALF_UP, Decimal

from .types import SOURCE_GROUPS, CorpusStats, RawItem


def percentage(count: int, total: int) -> float:
    """100*count/total rounded half-up to 2 decimals; 0.00 on empty total."""
    if total == 0:
        return 0.0
    pct = (Decimal(count) * 100 / Decimal(total)).quantize(
        Decimal("0.01"), rounding=ROUND_HALF_UP)
    return float(pct)


def stats_from_counts(counts: dict[str, int]) -> CorpusStats:
    total = sum(counts.values())
    groups = {}
    for group in SOURCE_GROUPS:
        c = counts.get(group, 0)
        groups[group] = {"count": c, "percentage": percentage(c, total)}
    for group in sorted(counts):
        if group not in groups:
            groups[group] = {"count": counts[group],
                             "percentage": percentage(counts[group], total)}
    return CorpusStats(groups=groups, total=total)


def corpus_stats(items: list[RawItem]) -> CorpusStats:
    counts: dict[str, int] = {}
    for item in items:
        counts[item.source_group] = counts.get(item.source_group, 0) + 1
    return stats_from_counts(counts)
