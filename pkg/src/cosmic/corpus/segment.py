"""Greedy sentence-packing segmentation of long items into passages.

Each passage packs as many whole sentences as fit within ``target_len``
tokens; a single sentence longer than the target is hard-split at the
token boundary.  Consecutive passages share ``overlap`` tokens of context,
and every input token lands in at least one passage.
"""

from __future__ import annotations

from .types import Fragment, RawItem
from ..errors import ConfigurationError
from ..textproc import sentence_end_token_indices, token_spans


def segment(item: RawItem, target_len: int = 160, overlap: int = 20) -> list[Fragment]:
    if target_len <= 0:
        raise ConfigurationError(f"target_len must be positive, got {target_len}")
    if overlap < 0 or overlap >= target_len:
        raise ConfigurationError(
            f"overlap must satisfy 0 <= overlap < target_len, got {overlap}")

    spans = token_spans(item.text)
    n = len(spans)
    if n == 0:
        return []
    if n <= target_len:
        return [_fragment(item, 0, item.text, n)]

    # Token index -> set of cut candidates: one past each sentence-ending token.
    boundaries = [i + 1 for i in sentence_end_token_indices(item.text, spans)]

    fragments: list[Fragment] = []
    start = 0
    prev_cut = 0
    seq = 0
    while True:
        window_end = start + target_len
        if n - start <= target_len:
            cut = n
        else:
            # Largest sentence boundary that fits the window and advances
            # past the previous cut; hard split when no sentence ends there.
            fitting = [b for b in boundaries if prev_cut < b <= window_end]
            cut = fitting[-1] if fitting else window_end
        text = item.text[spans[start][0]:spans[cut - 1][1]]
        fragments.append(_fragment(item, seq, text, cut - start))
        seq += 1
        if cut >= n:
            break
        prev_cut = cut
        start = max(cut - overlap, 0)
    return fragments


def _fragment(item: RawItem, seq: int, text: str, length: int) -> Fragment:
    return Fragment(
        id=f"{item.id}#{seq}",
        text=text,
        source_group=item.source_group,
        language=item.language,
        parent_id=item.id,
        length_tokens=length,
    )
