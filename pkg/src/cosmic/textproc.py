"""Shared text primitives: normalization, tokenization, term extraction.

These rules are the single contract used by the corpus pipeline, the
retrieval index, and prompt budgeting, so token counts agree everywhere:

* ``normalize_text`` — NFC, control characters dropped, any whitespace run
  (including NBSP and full-width spaces) collapsed to one ASCII space.
* a *token* is either a single CJK character or a maximal run of
  non-whitespace, non-CJK characters; this keeps counts deterministic for
  mixed English/Chinese text without a learned tokenizer.
* a *term* (for retrieval) is a token lowercased with surrounding
  punctuation stripped; tokens that reduce to nothing are dropped.
"""

from __future__ import annotations

import unicodedata

# Han ideographs plus CJK punctuation/fullwidth blocks: each such character
# counts as one token on its own.
_CJK_RANGES = (
    (0x3000, 0x303F),    # CJK symbols and punctuation (includes 、。)
    (0x3400, 0x4DBF),    # CJK extension A
    (0x4E00, 0x9FFF),    # CJK unified ideographs
    (0xF900, 0xFAFF),    # CJK compatibility ideographs
    (0xFF00, 0xFFEF),    # halfwidth/fullwidth forms
    (0x20000, 0x2A6DF),  # CJK extension B
)

_STRIP_PUNCT = "".join(
    chr(c) for c in range(0x21, 0x7F) if not chr(c).isalnum()
) + "‘’“”–—…"


def is_cjk(ch: str) -> bool:
    cp = ord(ch)
    return any(lo <= cp <= hi for lo, hi in _CJK_RANGES)


def normalize_text(raw: str) -> str:
    """Canonicalize a passage of text.

    NFC normalization, removal of non-whitespace control characters, and
    collapse of every whitespace run to a single space.  Case and
    punctuation are preserved.  Idempotent; empty input yields empty output.
    """
    text = unicodedata.normalize("NFC", raw)
    out: list[str] = []
    in_space = False
    for ch in text:
        if ch.isspace():
            in_space = True
            continue
        if unicodedata.category(ch) == "Cc":
            continue
        if in_space and out:
            out.append(" ")
        in_space = False
        out.append(ch)
    return "".join(out)


def token_spans(text: str) -> list[tuple[int, int]]:
    """Return (start, end) character spans of each token in ``text``."""
    spans: list[tuple[int, int]] = []
    start = None
    for i, ch in enumerate(text):
        if ch.isspace():
            if start is not None:
                spans.append((start, i))
                start = None
        elif is_cjk(ch):
            if start is not None:
                spans.append((start, i))
                start = None
            spans.append((i, i + 1))
        else:
            if start is None:
                start = i
    if start is not None:
        spans.append((start, len(text)))
    return spans


def tokenize(text: str) -> list[str]:
    """Split ``text`` into tokens (see module docstring for the rules)."""
    return [text[s:e] for s, e in token_spans(text)]


def count_tokens(text: str) -> int:
    return len(token_spans(text))


def terms(text: str) -> list[str]:
    """Extract retrieval terms: lowercased tokens with surrounding
    punctuation stripped; empty leftovers are dropped."""
    out: list[str] = []
    for tok in tokenize(text):
        t = tok.strip(_STRIP_PUNCT).lower()
        if t:
            out.append(t)
    return out


_SENTENCE_END = set(".!?。！？…")


def sentence_end_token_indices(text: str, spans: list[tuple[int, int]] | None = None) -> list[int]:
    """Indices ``i`` such that token ``i`` ends a sentence.

    A token ends a sentence when its last character (or the first
    non-quote character walking backwards) is a sentence-final mark.
    The final token of the text always closes a sentence.
    """
    if spans is None:
        spans = token_spans(text)
    ends: list[int] = []
    for i, (s, e) in enumerate(spans):
        tok = text[s:e].rstrip("\"')”’）")
        if tok and tok[-1] in _SENTENCE_END:
            ends.append(i)
    if spans and (not ends or ends[-1] != len(spans) - 1):
        ends.append(len(spans) - 1)
    return ends


def split_sentences(text: str) -> list[str]:
    """Split normalized text into sentences (used for narration fallback)."""
    spans = token_spans(text)
    if not spans:
        return []
    ends = sentence_end_token_indices(text, spans)
    sentences = []
    start_tok = 0
    for end_tok in ends:
        s = spans[start_tok][0]
        e = spans[end_tok][1]
        sentences.append(text[s:e])
        start_tok = end_tok + 1
    return sentences
