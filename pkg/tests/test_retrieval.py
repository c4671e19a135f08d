"""Index construction and retrieval against exhaustive oracles."""

from __future__ import annotations

import math
import random

import pytest

from cosmic.archive import Archive, HistoricalEvent
from cosmic.corpus.types import Fragment, ReferenceLibrary
from cosmic.errors import IndexError_, ValidationError
from cosmic.retrieval import (build_index, cosine, retrieve_anchors,
                              retrieve_style, scenario_query_text)
from cosmic.speculation.scenario import ScenarioSpec

# Ten-document fixture with hand-computed tf-idf weights (raw count times
# ln(N/df)); see the frozen constants below.
TEN_DOCS = {
    "d0": "mars colony dome",
    "d1": "mars orbit station",
    "d2": "colony ship launch",
    "d3": "alien signal beacon",
    "d4": "mars dust storm",
    "d5": "lunar base dome",
    "d6": "orbit transfer burn",
    "d7": "signal relay mars",
    "d8": "colony harvest cycle",
    "d9": "station crew rotation",
}

# df: mars=4, colony=3, dome=2, orbit=2, station=2, signal=2, the rest 1.
LN_10_4 = 0.9162907318741551     # ln(10/4)
LN_10_3 = 1.2039728043259361     # ln(10/3)
LN_5 = 1.6094379124341003        # ln(10/2)
LN_10 = 2.302585092994046        # ln(10/1)


def library_of(docs: dict) -> ReferenceLibrary:
    frags = [Fragment(id=k, text=v, source_group="classic_literature",
                      language="en", parent_id=k) for k, v in docs.items()]
    return ReferenceLibrary(fragments=frags, groups={"general": list(docs)},
                            target_count=len(docs))


def archive_of(docs: dict, bodies: dict | None = None) -> Archive:
    events = tuple(
        HistoricalEvent(id=k, date="2000-01-01", title=v,
                        celestial_body=(bodies or {}).get(k, "other"))
        for k, v in sorted(docs.items())
    )
    return Archive(events=events)


@pytest.fixture(scope="module")
def ten_doc_index():
    return build_index(library_of(TEN_DOCS), archive_of({"e0": "placeholder event"}))


class TestBuildIndex:
    def test_vector_counts(self, small_library, small_archive):
        index = build_index(small_library, small_archive)
        assert len(index.fragment_vectors) == len(small_library.fragments)
        assert len(index.event_vectors) == small_archive.record_count

    def test_term_in_every_document_dropped(self):
        docs = {"a": "shared alpha", "b": "shared beta", "c": "shared gamma"}
        index = build_index(library_of(docs), archive_of({"e": "x"}))
        for vec in index.fragment_vectors.values():
            assert "shared" not in vec
            assert all(w != 0.0 for w in vec.values())

    def test_hand_computed_weights(self, ten_doc_index):
        vec = ten_doc_index.fragment_vectors["d0"]
        assert vec["mars"] == pytest.approx(LN_10_4, abs=1e-12)
        assert vec["colony"] == pytest.approx(LN_10_3, abs=1e-12)
        assert vec["dome"] == pytest.approx(LN_5, abs=1e-12)
        vec5 = ten_doc_index.fragment_vectors["d5"]
        assert vec5["lunar"] == pytest.approx(LN_10, abs=1e-12)
        assert vec5["base"] == pytest.approx(LN_10, abs=1e-12)
        assert vec5["dome"] == pytest.approx(LN_5, abs=1e-12)

    def test_term_frequency_scales_weight(self):
        docs = {"a": "echo echo echo rare", "b": "plain filler words"}
        index = build_index(library_of(docs), archive_of({"e": "x"}))
        vec = index.fragment_vectors["a"]
        assert vec["echo"] == pytest.approx(3 * math.log(2), abs=1e-12)

    def test_empty_inputs_rejected(self, small_archive, small_library):
        empty_lib = ReferenceLibrary(fragments=[], groups={}, target_count=0)
        with pytest.raises(IndexError_):
            build_index(empty_lib, small_archive)
        with pytest.raises(IndexError_):
            build_index(small_library, Archive(events=()))


class TestRetrieveStyle:
    def test_identical_query_ranks_first(self, ten_doc_index):
        results = retrieve_style(ten_doc_index, TEN_DOCS["d3"], k=3)
        assert results[0].id == "d3"
        assert results[0].score == pytest.approx(1.0, abs=1e-9)
        assert results[0].score == max(r.score for r in results)

    def test_disjoint_vocabulary_empty(self, ten_doc_index):
        assert retrieve_style(ten_doc_index, "zzz qqq www", k=5) == []

    def test_hand_computed_ranking(self, ten_doc_index):
        # Frozen from an independent spreadsheet-style computation.
        results = retrieve_style(ten_doc_index, "mars colony", k=10)
        expect = [
            ("d0", 0.6849384935175331),
            ("d2", 0.27595827793637356),
            ("d8", 0.27595827793637356),
            ("d1", 0.226165379294015),
            ("d7", 0.18779289689682008),
            ("d4", 0.1640413108861627),
        ]
        assert [r.id for r in results] == [e[0] for e in expect]
        for r, (_, score) in zip(results, expect):
            assert r.score == pytest.approx(score, abs=1e-12)

    def test_empty_query_rejected(self, ten_doc_index):
        with pytest.raises(ValidationError):
            retrieve_style(ten_doc_index, "  ... ", k=3)

    def test_k_validation(self, ten_doc_index):
        with pytest.raises(ValidationError):
            retrieve_style(ten_doc_index, "mars", k=0)

    def test_duplicated_text_score_invariant(self):
        docs = dict(TEN_DOCS)
        docs["dup"] = TEN_DOCS["d0"] + " " + TEN_DOCS["d0"]
        index = build_index(library_of(docs), archive_of({"e": "x"}))
        results = {r.id: r.score for r in retrieve_style(index, "mars colony", k=20)}
        assert results["dup"] == pytest.approx(results["d0"], abs=1e-9)

    def test_k_prefix_monotonicity(self, ten_doc_index):
        prev = []
        for k in (1, 2, 3, 4, 6, 10):
            cur = retrieve_style(ten_doc_index, "mars colony dome", k=k)
            assert cur[:len(prev)] == prev
            prev = cur


def oracle_rank(index, query_text, kind, k, boost_body=None, boost=1.5,
                bodies=None):
    """Exhaustive scan with its own cosine, ranked (-score, id)."""
    qv = index.query_vector(query_text, kind)
    vectors = index.fragment_vectors if kind == "fragment" else index.event_vectors
    scored = []
    for did, vec in vectors.items():
        num = sum(qv.get(t, 0.0) * w for t, w in vec.items())
        den = (math.sqrt(sum(x * x for x in qv.values()))
               * math.sqrt(sum(x * x for x in vec.values())))
        s = num / den if den else 0.0
        if boost_body and bodies.get(did) == boost_body:
            s *= boost
        if s > 0.0:
            scored.append((did, s))
    scored.sort(key=lambda p: (-p[1], p[0]))
    return scored[:k]


def assert_rankings_equal(got, want):
    assert [r.id for r in got] == [w[0] for w in want]
    for r, (_, score) in zip(got, want):
        assert r.score == pytest.approx(score, abs=1e-12)


@pytest.fixture(scope="module")
def big_index():
    rng = random.Random(77)
    words = ["mars", "moon", "colony", "dome", "signal", "orbit", "dust",
             "alien", "crew", "relay", "storm", "launch", "base", "ship"]
    frag_docs = {f"f{i:03d}": " ".join(rng.choice(words) for _ in range(12))
                 for i in range(100)}
    bodies = {}
    event_docs = {}
    for i in range(50):
        eid = f"e{i:03d}"
        event_docs[eid] = " ".join(rng.choice(words) for _ in range(10))
        bodies[eid] = rng.choice(["mars", "moon", "other"])
    return (build_index(library_of(frag_docs), archive_of(event_docs, bodies)),
            bodies)


class TestOracleAgreement:
    def test_style_matches_bruteforce(self, big_index):
        index, _ = big_index
        rng = random.Random(123)
        words = ["mars", "colony", "signal", "dust", "ship", "alien"]
        for _ in range(20):
            query = " ".join(rng.choice(words) for _ in range(4))
            for k in (1, 4, 8, 32):
                got = retrieve_style(index, query, k=k)
                want = oracle_rank(index, query, "fragment", k)
                assert_rankings_equal(got, want)

    def test_anchors_match_bruteforce_with_boost(self, big_index):
        index, bodies = big_index
        scenario = ScenarioSpec(celestial_body="mars", question="colony dust signal")
        query = scenario_query_text(scenario.celestial_body,
                                    scenario.mission_name, scenario.question)
        for k in (1, 4, 8, 32):
            got = retrieve_anchors(index, scenario, k=k, body_boost=1.5)
            want = oracle_rank(index, query, "event", k,
                               boost_body="mars", bodies=bodies)
            assert_rankings_equal(got, want)


class TestRetrieveAnchors:
    def test_body_boost_outranks_equal_text(self):
        # mars1/moon1 and mars2/moon2 carry identical text; the boost must
        # break those ties in favor of the scenario body.
        docs = {
            "mars1": "mars mission alpha",
            "moon1": "mars mission alpha",
            "mars2": "mars mission beta",
            "moon2": "mars mission beta",
            "extra": "unrelated dust survey",
        }
        bodies = {"mars1": "mars", "mars2": "mars",
                  "moon1": "moon", "moon2": "moon", "extra": "moon"}
        index = build_index(library_of({"f": "x y z"}), archive_of(docs, bodies))
        results = retrieve_anchors(index, ScenarioSpec(celestial_body="mars",
                                                       question="mars mission"), k=5)
        assert {results[0].id, results[1].id} == {"mars1", "mars2"}
        assert results[0].score > results[2].score

    def test_mission_name_term_overlap(self, small_index):
        results = retrieve_anchors(small_index, ScenarioSpec(mission_name="Apollo"), k=3)
        assert results and results[0].id == "apollo11"

    def test_year_only_scenario_yields_no_anchors(self, small_index):
        assert retrieve_anchors(small_index, ScenarioSpec(year=2077), k=4) == []

    def test_sorted_desc_ties_by_id(self, small_index):
        results = retrieve_anchors(
            small_index, ScenarioSpec(celestial_body="mars", question="mars"), k=6)
        keys = [(-r.score, r.id) for r in results]
        assert keys == sorted(keys)


class TestSerialization:
    def test_roundtrip(self, small_index, tmp_path):
        from cosmic.retrieval import load_index, save_index
        p = tmp_path / "index.json"
        save_index(small_index, p)
        loaded = load_index(p)
        assert loaded.fragment_vectors == small_index.fragment_vectors
        assert loaded.event_bodies == small_index.event_bodies


class TestCosine:
    def test_zero_for_empty(self):
        assert cosine({}, {"a": 1.0}) == 0.0

    def test_symmetric(self):
        a = {"x": 1.0, "y": 2.0}
        b = {"y": 1.5, "z": 3.0}
        assert cosine(a, b) == pytest.approx(cosine(b, a), abs=1e-15)

    def test_self_similarity_is_one(self):
        v = {"x": 0.3, "y": 1.7, "z": 2.2}
        assert cosine(v, v) == pytest.approx(1.0, abs=1e-12)
