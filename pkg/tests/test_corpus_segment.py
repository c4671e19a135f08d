"""Segmentation against a greedy sentence-packing oracle."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cosmic.corpus.segment import segment
from cosmic.corpus.types import RawItem
from cosmic.errors import ConfigurationError
from cosmic.textproc import tokenize


def make(text):
    return RawItem(id="item", text=text, source_group="classic_literature")


def oracle_boundaries(text, target, overlap):
    """Independent greedy packer over explicit sentence token lists.

    Returns the list of (start, cut) token windows it would emit.
    """
    tokens = tokenize(text)
    sentence_ends = []
    for idx, tok in enumerate(tokens):
        stripped = tok.rstrip("\"')”’）")
        if stripped and stripped[-1] in ".!?。！？…":
            sentence_ends.append(idx + 1)
    if not sentence_ends or sentence_ends[-1] != len(tokens):
        sentence_ends.append(len(tokens))

    windows = []
    n = len(tokens)
    if n == 0:
        return windows
    if n <= target:
        return [(0, n)]
    start, prev_cut = 0, 0
    while True:
        if n - start <= target:
            cut = n
        else:
            candidates = [b for b in sentence_ends if prev_cut < b <= start + target]
            cut = candidates[-1] if candidates else start + target
        windows.append((start, cut))
        if cut >= n:
            return windows
        prev_cut = cut
        start = cut - overlap


def sentences_text(rng, n_sentences, words_per=8):
    words = ["orbit", "dust", "signal", "crew", "reactor", "lander", "ridge",
             "vault", "relay", "hatch", "storm", "glass", "wire", "echo"]
    parts = []
    for _ in range(n_sentences):
        k = rng.randrange(3, words_per + 4)
        parts.append(" ".join(rng.choice(words) for _ in range(k)) + ".")
    return " ".join(parts)


class TestSegment:
    def test_short_item_single_fragment(self):
        item = make("A short passage. Nothing to split.")
        frags = segment(item, target_len=160, overlap=20)
        assert len(frags) == 1
        assert frags[0].text == item.text
        assert frags[0].parent_id == "item"
        assert frags[0].length_tokens == len(tokenize(item.text))

    def test_zero_overlap_concatenation_reproduces_tokens(self):
        rng = random.Random(3)
        text = sentences_text(rng, 18)
        tokens = tokenize(text)
        assert len(tokens) >= 100
        frags = segment(make(text), target_len=40, overlap=0)
        rebuilt = []
        for f in frags:
            rebuilt.extend(tokenize(f.text))
        assert rebuilt == tokens

    def test_500_token_fixture_matches_oracle(self):
        rng = random.Random(11)
        text = sentences_text(rng, 75)
        tokens = tokenize(text)
        assert len(tokens) >= 400
        frags = segment(make(text), target_len=120, overlap=20)
        windows = oracle_boundaries(text, 120, 20)
        assert len(frags) == len(windows)
        for frag, (s, c) in zip(frags, windows):
            assert tokenize(frag.text) == tokens[s:c]

    def test_consecutive_fragments_share_overlap(self):
        rng = random.Random(4)
        text = sentences_text(rng, 40)
        frags = segment(make(text), target_len=50, overlap=10)
        for a, b in zip(frags, frags[1:]):
            assert tokenize(a.text)[-10:] == tokenize(b.text)[:10]

    def test_fragment_metadata_inherited(self):
        item = RawItem(id="p1", text=sentences_text(random.Random(1), 30),
                       source_group="chinese_scifi_webfiction", language="zh")
        frags = segment(item, target_len=40, overlap=5)
        assert all(f.source_group == item.source_group for f in frags)
        assert all(f.language == "zh" for f in frags)
        assert all(f.parent_id == "p1" for f in frags)
        assert [f.id for f in frags] == [f"p1#{i}" for i in range(len(frags))]

    def test_oversized_sentence_hard_split(self):
        text = " ".join(f"w{i}" for i in range(100)) + "."
        frags = segment(make(text), target_len=30, overlap=0)
        assert all(f.length_tokens <= 30 for f in frags)
        rebuilt = []
        for f in frags:
            rebuilt.extend(tokenize(f.text))
        assert rebuilt == tokenize(text)

    @pytest.mark.parametrize("target,overlap", [(0, 0), (10, 10), (10, 12), (10, -1)])
    def test_config_violations(self, target, overlap):
        with pytest.raises(ConfigurationError):
            segment(make("some text here."), target_len=target, overlap=overlap)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 9999), st.integers(1, 60), st.integers(5, 80))
    def test_coverage_property(self, seed, n_sentences, target):
        overlap = min(4, target - 1)
        rng = random.Random(seed)
        text = sentences_text(rng, n_sentences)
        tokens = tokenize(text)
        frags = segment(make(text), target_len=target, overlap=overlap)
        covered = []
        for f in frags:
            covered.extend(tokenize(f.text))
        # Every input token appears in at least one passage, in order.
        assert len(covered) >= len(tokens)
        assert _subsequence(tokens, covered)

    def test_matches_oracle_across_params(self):
        rng = random.Random(42)
        for _ in range(15):
            text = sentences_text(rng, rng.randrange(5, 50))
            target = rng.randrange(15, 90)
            overlap = rng.randrange(0, min(10, target))
            frags = segment(make(text), target, overlap)
            tokens = tokenize(text)
            windows = oracle_boundaries(text, target, overlap)
            assert [tokenize(f.text) for f in frags] == [tokens[s:c] for s, c in windows]


def _subsequence(needle, haystack):
    it = iter(haystack)
    return all(x in it for x in needle)
