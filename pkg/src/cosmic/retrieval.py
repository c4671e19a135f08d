"""Lexical tf-idf retrieval over the reference library and the archive.

Weights are raw term count times ``log(N/df)`` per collection, ranked by
cosine similarity.  Deterministic and exactly checkable against a
brute-force oracle, which is why this stays lexical rather than neural;
an embedding backend can be slotted behind the same call signatures.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from .archive import Archive
from .corpus.types import ReferenceLibrary
from .errors import IndexError_, ValidationError
from .textproc import terms


@dataclass(frozen=True)
class RetrievalResult:
    id: str
    score: float
    kind: str                      # "fragment" | "event"

    def to_dict(self) -> dict:
        return {"id": self.id, "score": self.score, "kind": self.kind}


Vector = dict[str, float]


def _vectorize_collection(docs: dict[str, str]) -> tuple[dict[str, Vector], dict[str, int]]:
    """tf-idf vectors and document frequencies for one collection."""
    n = len(docs)
    tfs: dict[str, dict[str, int]] = {}
    df: dict[str, int] = {}
    for doc_id, text in docs.items():
        counts: dict[str, int] = {}
        for term in terms(text):
            counts[term] = counts.get(term, 0) + 1
        tfs[doc_id] = counts
        for term in counts:
            df[term] = df.get(term, 0) + 1

    vectors: dict[str, Vector] = {}
    for doc_id, counts in tfs.items():
        vec = {}
        for term, count in counts.items():
            idf = math.log(n / df[term])
            if idf > 0.0:
                vec[term] = count * idf
        vectors[doc_id] = vec
    return vectors, df


@dataclass(frozen=True)
class Index:
    fragment_vectors: dict[str, Vector]
    event_vectors: dict[str, Vector]
    fragment_df: dict[str, int]
    event_df: dict[str, int]
    fragment_count: int
    event_count: int
    event_bodies: dict[str, str]    # event id -> celestial_body tag, for boosting

    def query_vector(self, query: str, kind: str) -> Vector:
        df = self.fragment_df if kind == "fragment" else self.event_df
        n = self.fragment_count if kind == "fragment" else self.event_count
        counts: dict[str, int] = {}
        for term in terms(query):
            counts[term] = counts.get(term, 0) + 1
        vec = {}
        for term, count in counts.items():
            if term in df:
                idf = math.log(n / df[term])
                if idf > 0.0:
                    vec[term] = count * idf
        return vec

    def to_dict(self) -> dict:
        return {
            "fragment_vectors": self.fragment_vectors,
            "event_vectors": self.event_vectors,
            "fragment_df": self.fragment_df,
            "event_df": self.event_df,
            "fragment_count": self.fragment_count,
            "event_count": self.event_count,
            "event_bodies": self.event_bodies,
        }


def build_index(library: ReferenceLibrary, archive: Archive) -> Index:
    """Index both collections; idf is computed per collection."""
    if not library.fragments:
        raise IndexError_("reference library is empty")
    if not archive.events:
        raise IndexError_("archive is empty")

    frag_docs = {f.id: f.text for f in library.fragments}
    event_docs = {e.id: f"{e.title} {e.summary} {e.mission_name}".strip()
                  for e in archive.events}
    frag_vecs, frag_df = _vectorize_collection(frag_docs)
    event_vecs, event_df = _vectorize_collection(event_docs)
    return Index(
        fragment_vectors=frag_vecs,
        event_vectors=event_vecs,
        fragment_df=frag_df,
        event_df=event_df,
        fragment_count=len(frag_docs),
        event_count=len(event_docs),
        event_bodies={e.id: e.celestial_body for e in archive.events},
    )


def cosine(a: Vector, b: Vector) -> float:
    if not a or not b:
        return 0.0
    if len(b) < len(a):
        a, b = b, a
    dot = sum(w * b[t] for t, w in a.items() if t in b)
    if dot == 0.0:
        return 0.0
    norm_a = math.sqrt(sum(w * w for w in a.values()))
    norm_b = math.sqrt(sum(w * w for w in b.values()))
    return dot / (norm_a * norm_b)


def _rank(scored: list[RetrievalResult], k: int) -> list[RetrievalResult]:
    scored = [r for r in scored if r.score > 0.0]
    scored.sort(key=lambda r: (-r.score, r.id))
    return scored[:k]


def retrieve_style(index: Index, query: str, k: int = 8) -> list[RetrievalResult]:
    """Top-k fragments by cosine similarity; zero scores are excluded."""
    if k <= 0:
        raise ValidationError(f"k must be positive, got {k}")
    if not terms(query):
        raise ValidationError("query is empty after normalization")
    qv = index.query_vector(query, "fragment")
    scored = [RetrievalResult(fid, cosine(qv, vec), "fragment")
              for fid, vec in index.fragment_vectors.items()]
    return _rank(scored, k)


def scenario_query_text(celestial_body: str | None, mission_name: str | None,
                        question: str | None) -> str:
    """Anchor/style query assembled from the scenario's textual fields."""
    parts = []
    if celestial_body and celestial_body != "other":
        parts.append(celestial_body.replace("_", " "))
    if mission_name:
        parts.append(mission_name)
    if question:
        parts.append(question)
    return " ".join(parts)


def retrieve_anchors(
    index: Index,
    scenario,
    k: int = 4,
    body_boost: float = 1.5,
) -> list[RetrievalResult]:
    """Top-k factual anchor events for a scenario.

    Events tagged with the scenario's celestial body get a multiplicative
    boost before ranking; a scenario with no textual fields (year only)
    yields no anchors.
    """
    if k <= 0:
        raise ValidationError(f"k must be positive, got {k}")
    query = scenario_query_text(
        getattr(scenario, "celestial_body", None),
        getattr(scenario, "mission_name", None),
        getattr(scenario, "question", None),
    )
    if not terms(query):
        return []
    qv = index.query_vector(query, "event")
    body = getattr(scenario, "celestial_body", None)
    scored = []
    for eid, vec in index.event_vectors.items():
        score = cosine(qv, vec)
        if body and body != "other" and index.event_bodies.get(eid) == body:
            score *= body_boost
        scored.append(RetrievalResult(eid, score, "event"))
    return _rank(scored, k)


def save_index(index: Index, path: str | Path) -> None:
    from .archive import canonical_json
    Path(path).write_text(canonical_json(index.to_dict()) + "\n", encoding="utf-8")


def load_index(path: str | Path) -> Index:
    d = json.loads(Path(path).read_text(encoding="utf-8"))
    return Index(
        fragment_vectors=d["fragment_vectors"],
        event_vectors=d["event_vectors"],
        fragment_df=d["fragment_df"],
        event_df=d["event_df"],
        fragment_count=d["fragment_count"],
        event_count=d["event_count"],
        event_bodies=d["event_bodies"],
    )
