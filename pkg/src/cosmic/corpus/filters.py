"""Length-window filtering of corpus items."""

from __future__ import annotations

from .types import RawItem
from ..errors import ConfigurationError
from ..textproc import count_tokens


def filter_by_length(items: list[RawItem], min_len: int, max_len: int) -> list[RawItem]:
    """Keep items whose token count lies in the inclusive [min_len, max_len]."""
    if min_len <= 0:
        raise ConfigurationError(f"min_len must be positive, got {min_len}")
    if min_len > max_len:
        raise ConfigurationError(
            f"min_len must not exceed max_len, got [{min_len}, {max_len}]")
    return [i for i in items if min_len <= count_tokens(i.text) <= max_len]
