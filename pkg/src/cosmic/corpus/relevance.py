"""Speculative-relevance scoring and theme assignment via term lexicons.

English terms match case-insensitively on word boundaries; terms containing
CJK characters match as substrings (Chinese has no word boundaries to
anchor on).  Each distinct lexicon term counts once however often it
occurs.
"""

from __future__ import annotations

import json
import re
from importlib import resources

from .types import Fragment, RawItem
from ..errors import ConfigurationError
from ..textproc import is_cjk

DEFAULT_SATURATION = 5.0


def _term_present(term: str, text: str, text_lower: str) -> bool:
    if any(is_cjk(ch) for ch in term):
        return term in text
    return re.search(rf"\b{re.escape(term.lower())}\b", text_lower) is not None


def lexicon_hits(text: str, lexicon: dict[str, float]) -> dict[str, float]:
    """Weights of the distinct lexicon terms present in ``text``."""
    text_lower = text.lower()
    return {
        term: weight
        for term, weight in lexicon.items()
        if _term_present(term, text, text_lower)
    }


def score_relevance(
    item: RawItem | Fragment,
    lexicon: dict[str, float],
    saturation: float = DEFAULT_SATURATION,
) -> float:
    """Saturating sum of matched term weights, clamped to [0, 1]."""
    if not lexicon:
        raise ConfigurationError("relevance lexicon is empty")
    if saturation <= 0:
        raise ConfigurationError(f"saturation must be positive, got {saturation}")
    total = sum(lexicon_hits(item.text, lexicon).values())
    return min(1.0, total / saturation)


def group_by_theme(
    fragments: list[Fragment],
    theme_lexicons: dict[str, list[str]],
) -> dict[str, list[str]]:
    """Assign each fragment to its best-scoring theme.

    The theme score is the number of distinct lexicon terms present; ties
    break by label lexicographic order and zero scores land in ``general``.
    """
    if "general" not in theme_lexicons:
        raise ConfigurationError("theme lexicons must include a catch-all 'general'")

    labels = sorted(theme_lexicons)
    groups: dict[str, list[str]] = {label: [] for label in labels}
    for frag in fragments:
        text_lower = frag.text.lower()
        best_label, best_score = "general", 0
        for label in labels:
            score = sum(
                1 for term in theme_lexicons[label]
                if _term_present(term, frag.text, text_lower)
            )
            if score > best_score:
                best_label, best_score = label, score
        groups[best_label].append(frag.id)
    return groups


def load_lexicon(path: str | None = None) -> dict[str, float]:
    """Load the weighted speculative-relevance lexicon (shipped default)."""
    if path is not None:
        data = json.loads(open(path, encoding="utf-8").read())
    else:
        data = json.loads(
            resources.files("cosmic.corpus").joinpath("data/speculative_lexicon.json").read_text("utf-8"))
    return {str(term): float(w) for term, w in data["terms"].items()}


def load_theme_lexicons(path: str | None = None) -> dict[str, list[str]]:
    """Load theme label -> term list mapping (shipped default)."""
    if path is not None:
        data = json.loads(open(path, encoding="utf-8").read())
    else:
        data = json.loads(
            resources.files("cosmic.corpus").joinpath("data/theme_lexicons.json").read_text("utf-8"))
    return {str(label): [str(t) for t in terms] for label, terms in data["themes"].items()}
