"""Tolerant parsing of the provider's labeled reply sections.

Real model output drifts: markdown bold labels, synonym labels, stray
blank lines, content on the label line or below it.  The parser accepts
all of that; only a missing headline or article is fatal.  A missing
narration falls back to the first three article sentences.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import ReplyParseError
from ..textproc import split_sentences

_ALIASES = {
    "headline": "headline",
    "title": "headline",
    "article": "article",
    "story": "article",
    "body": "article",
    "narration": "narration_script",
    "narration script": "narration_script",
    "voice narration": "narration_script",
    "media brief": "media_brief",
    "media": "media_brief",
    "image brief": "media_brief",
    "visual": "media_brief",
    "plausibility note": "plausibility_note",
    "plausibility": "plausibility_note",
    "realizability note": "plausibility_note",
}

_LABEL_RE = re.compile(
    r"^[\s#>*\-]*(" + "|".join(re.escape(a) for a in _ALIASES) + r")"
    r"[\s*_]*[:—\-]\s*(.*)$",
    re.IGNORECASE,
)


@dataclass(frozen=True)
class StructuredReply:
    headline: str
    article: str
    narration_script: str
    media_brief: str
    plausibility_note: str


def parse_structured_reply(raw: str) -> StructuredReply:
    sections: dict[str, list[str]] = {}
    current: str | None = None
    for line in raw.splitlines():
        m = _LABEL_RE.match(line)
        if m:
            current = _ALIASES[m.group(1).lower()]
            sections.setdefault(current, [])
            inline = m.group(2).strip().strip("*_").strip()
            if inline:
                sections[current].append(inline)
        elif current is not None:
            sections[current].append(line)

    def text_of(key: str) -> str:
        lines = sections.get(key, [])
        return "\n".join(lines).strip()

    headline = text_of("headline")
    article = text_of("article")
    if not headline:
        raise ReplyParseError("reply is missing a headline section")
    if not article:
        raise ReplyParseError("reply is missing an article section")

    narration = text_of("narration_script")
    if not narration:
        narration = " ".join(split_sentences(re.sub(r"\s+", " ", article))[:3])

    return StructuredReply(
        headline=headline,
        article=article,
        narration_script=narration,
        media_brief=text_of("media_brief"),
        plausibility_note=text_of("plausibility_note"),
    )
