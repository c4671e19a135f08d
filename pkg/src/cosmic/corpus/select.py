"""Deterministic selection of the fixed-size reference library.

Replaces manual curation with a reproducible rule: themes receive slots in
proportion to their share of the pool (floor), remainder slots go to the
highest-relevance leftovers pool-wide, and relevance rank (ties by id)
decides within each theme.
"""

from __future__ import annotations

from .types import Fragment, ReferenceLibrary
from ..errors import ConfigurationError

DEFAULT_TARGET_COUNT = 218


def select_representatives(
    fragments: list[Fragment],
    target_count: int = DEFAULT_TARGET_COUNT,
    groups: dict[str, list[str]] | None = None,
    pipeline_config: dict | None = None,
) -> ReferenceLibrary:
    """Pick ``min(target_count, pool size)`` fragments.

    ``groups`` is the theme assignment from :func:`group_by_theme`; when
    omitted, each fragment's first theme tag (or ``general``) is used.
    """
    if target_count <= 0:
        raise ConfigurationError(f"target_count must be positive, got {target_count}")

    if not fragments:
        return ReferenceLibrary(
            fragments=[], groups={}, target_count=target_count,
            pipeline_config=pipeline_config or {},
            warning="empty fragment pool; library is empty",
        )

    by_id = {f.id: f for f in fragments}
    if groups is None:
        groups = {}
        for f in fragments:
            label = f.theme_tags[0] if f.theme_tags else "general"
            groups.setdefault(label, []).append(f.id)

    total = len(fragments)
    take = min(target_count, total)

    def rank_key(fid: str):
        return (-by_id[fid].relevance_score, fid)

    selected: set[str] = set()
    if take == total:
        selected = set(by_id)
    else:
        # Proportional base allocation per theme, floor of the exact share.
        for label in sorted(groups):
            members = sorted(groups[label], key=rank_key)
            base = (target_count * len(members)) // total
            selected.update(members[:base])
        # Remainder slots: best leftover relevance pool-wide.
        leftovers = sorted((fid for fid in by_id if fid not in selected), key=rank_key)
        selected.update(leftovers[: take - len(selected)])

    chosen = sorted(selected)
    chosen_groups = {
        label: [fid for fid in sorted(groups[label]) if fid in selected]
        for label in sorted(groups)
        if any(fid in selected for fid in groups[label])
    }
    return ReferenceLibrary(
        fragments=[by_id[fid] for fid in chosen],
        groups=chosen_groups,
        target_count=target_count,
        pipeline_config=pipeline_config or {},
    )
