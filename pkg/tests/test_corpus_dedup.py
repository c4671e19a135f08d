"""Exact/near-duplicate removal against an exhaustive pairwise oracle."""

from __future__ import annotations

import random

import pytest

from cosmic.corpus.dedup import deduplicate, jaccard, shingles
from cosmic.corpus.types import RawItem
from cosmic.errors import ConfigurationError


def oracle_dedup(items, threshold, n=5):
    """Independent O(n^2) greedy re-implementation with its own shingling."""
    def grams(text):
        out = set()
        for i in range(len(text)):
            g = text[i:i + n]
            if len(g) == n:
                out.add(g)
        return out

    def sim(a, b):
        if not a or not b:
            return 0.0
        inter = len(a.intersection(b))
        union = len(a) + len(b) - inter
        return inter / union

    kept, kept_texts, kept_grams = [], [], []
    for item in items:
        if any(item.text == t for t in kept_texts):
            continue
        g = grams(item.text)
        if any(sim(g, kg) >= threshold for kg in kept_grams):
            continue
        kept.append(item)
        kept_texts.append(item.text)
        kept_grams.append(g)
    return kept


def make(i, text):
    return RawItem(id=f"i{i:03d}", text=text, source_group="community_narratives")


BASE_SENTENCES = [
    "The colony ship crossed the terminator line before dawn watch ended.",
    "Engineers rebuilt the fusion torch twice during the long transit.",
    "Nobody on the station trusted the new navigation intelligence yet.",
    "Dust storms swallowed the survey team's tracks within an hour.",
    "The relay beacon sang its lonely carrier wave toward home.",
]


class TestDeduplicate:
    def test_exact_duplicates_first_kept(self):
        a, a2, b = make(0, "same text here"), make(1, "same text here"), make(2, "different text")
        out = deduplicate([a, a2, b], 0.85)
        assert out == [a, b]

    def test_threshold_one_keeps_single_char_variant(self):
        a = make(0, "The colony ship crossed the terminator line before dawn.")
        a_prime = make(1, "The colony ship crossed the terminator line before dusk.")
        out = deduplicate([a, a_prime], 1.0)
        assert out == [a, a_prime]

    def test_planted_near_duplicates_fixture(self):
        rng = random.Random(13)
        vocab = [f"word{k}" for k in range(400)]
        items = []
        originals = []
        for i in range(15):
            # Distinct vocabulary slice per item keeps cross-item overlap low.
            pool = vocab[i * 25:(i + 1) * 25]
            text = " ".join(rng.choice(pool) for _ in range(60)) + f" Entry number {i}."
            items.append(make(i, text))
            originals.append(text)
        # Plant 5 near-duplicates: small suffix edit on long texts.
        for j in range(5):
            items.append(make(100 + j, originals[j].replace("Entry", "Log")))
        kept = deduplicate(items, 0.8)
        assert len(kept) == 15
        assert kept == oracle_dedup(items, 0.8)

    @pytest.mark.parametrize("threshold", [0.7, 0.85, 1.0])
    def test_matches_oracle_random_corpus(self, threshold):
        rng = random.Random(99)
        items = []
        for i in range(120):
            n = rng.randrange(2, 5)
            text = " ".join(rng.choice(BASE_SENTENCES) for _ in range(n))
            if rng.random() < 0.25 and items:
                text = items[rng.randrange(len(items))].text + " extra."
            items.append(make(i, text))
        assert deduplicate(items, threshold) == oracle_dedup(items, threshold)

    def test_idempotent(self):
        rng = random.Random(5)
        items = [make(i, " ".join(rng.sample(BASE_SENTENCES, 2))) for i in range(40)]
        once = deduplicate(items, 0.85)
        assert deduplicate(once, 0.85) == once

    def test_never_increases_count(self):
        items = [make(i, s) for i, s in enumerate(BASE_SENTENCES)]
        assert len(deduplicate(items, 0.5)) <= len(items)

    def test_order_preserved(self):
        items = [make(i, s) for i, s in enumerate(BASE_SENTENCES)]
        out = deduplicate(items, 0.85)
        ids = [i.id for i in out]
        assert ids == sorted(ids, key=lambda x: [i.id for i in items].index(x))

    @pytest.mark.parametrize("bad", [-0.1, 1.5])
    def test_threshold_out_of_range(self, bad):
        with pytest.raises(ConfigurationError):
            deduplicate([], bad)


class TestShingleJaccard:
    def test_identical_sets(self):
        s = shingles("abcdefghij")
        assert jaccard(s, s) == 1.0

    def test_disjoint(self):
        assert jaccard(shingles("aaaaaaaa"), shingles("bbbbbbbb")) == 0.0

    def test_short_text_has_no_shingles(self):
        assert shingles("abc") == frozenset()
        assert jaccard(frozenset(), shingles("abcdefgh")) == 0.0
