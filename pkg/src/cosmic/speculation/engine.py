"""Generation orchestration: retrieval -> prompt -> provider -> item.

With the mock provider every field of the produced item, including id and
timestamp, is a pure function of (scenario, seed, fixtures); that is what
makes the end-to-end path byte-reproducible across process restarts.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone

from .prompt import assemble_prompt
from .providers import DEFAULT_TIMEOUT, GenerationProvider
from .realizability import RealizabilityParams, score_realizability
from .reply import parse_structured_reply
from .scenario import ScenarioSpec
from ..errors import ReplyParseError, StructuredOutputError
from ..retrieval import retrieve_anchors, retrieve_style, scenario_query_text

_REFORMAT_NUDGE = (
    "\n\nYour previous reply did not follow the required format. Reply "
    "again using exactly the labeled sections HEADLINE, ARTICLE, NARRATION, "
    "MEDIA BRIEF, PLAUSIBILITY NOTE."
)


@dataclass(frozen=True)
class MediaDescriptor:
    kind: str                       # "image" | "video" | "placeholder"
    alt_text: str
    provider_id: str
    uri: str | None = None

    def to_dict(self) -> dict:
        return {"kind": self.kind, "uri": self.uri, "alt_text": self.alt_text,
                "provider_id": self.provider_id}

    @classmethod
    def from_dict(cls, d: dict) -> "MediaDescriptor":
        return cls(kind=d["kind"], alt_text=d.get("alt_text", ""),
                   provider_id=d.get("provider_id", ""), uri=d.get("uri"))


@dataclass(frozen=True)
class FutureNewsItem:
    id: str
    scenario: ScenarioSpec
    headline: str
    article: str
    narration_script: str
    media: MediaDescriptor
    realizability: int
    anchors_used: tuple[str, ...]
    fragments_used: tuple[str, ...]
    created_at: str
    provider_id: str
    generation_seed: int
    plausibility_note: str = ""

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "scenario": self.scenario.to_dict(),
            "headline": self.headline,
            "article": self.article,
            "narration_script": self.narration_script,
            "media": self.media.to_dict(),
            "realizability": self.realizability,
            "anchors_used": list(self.anchors_used),
            "fragments_used": list(self.fragments_used),
            "created_at": self.created_at,
            "provider_id": self.provider_id,
            "generation_seed": self.generation_seed,
            "plausibility_note": self.plausibility_note,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FutureNewsItem":
        s = d["scenario"]
        return cls(
            id=d["id"],
            scenario=ScenarioSpec(
                year=s.get("year"), celestial_body=s.get("celestial_body"),
                mission_name=s.get("mission_name"), question=s.get("question"),
                body_warning=s.get("body_warning"),
            ),
            headline=d["headline"],
            article=d["article"],
            narration_script=d["narration_script"],
            media=MediaDescriptor.from_dict(d["media"]),
            realizability=int(d["realizability"]),
            anchors_used=tuple(d.get("anchors_used", [])),
            fragments_used=tuple(d.get("fragments_used", [])),
            created_at=d["created_at"],
            provider_id=d["provider_id"],
            generation_seed=int(d["generation_seed"]),
            plausibility_note=d.get("plausibility_note", ""),
        )

    @property
    def display_year(self) -> int:
        """Temporal-axis year: scenario year, else creation year."""
        if self.scenario.year is not None:
            return self.scenario.year
        return int(self.created_at[:4])


@dataclass
class EngineConfig:
    k_style: int = 8
    k_anchor: int = 4
    body_boost: float = 1.5
    prompt_budget: int = 2048
    provider_timeout: float = DEFAULT_TIMEOUT
    realizability: RealizabilityParams = field(default_factory=RealizabilityParams)


def _item_id(scenario: ScenarioSpec, seed: int) -> str:
    digest = hashlib.sha256(f"{scenario.canonical()}#{seed}".encode("utf-8"))
    return f"fn-{digest.hexdigest()[:16]}"


def _derived_timestamp(scenario: ScenarioSpec, seed: int) -> str:
    """Deterministic pseudo-timestamp for reproducible (mock) generations."""
    digest = hashlib.sha256(f"ts:{scenario.canonical()}#{seed}".encode("utf-8"))
    offset = int.from_bytes(digest.digest()[:4], "big")
    base = datetime(2030, 1, 1, tzinfo=timezone.utc)
    return (base + timedelta(seconds=offset)).isoformat(timespec="seconds")


def generate(
    scenario: ScenarioSpec,
    provider: GenerationProvider,
    seed: int,
    index,
    library,
    archive,
    config: EngineConfig | None = None,
    now: datetime | None = None,
) -> FutureNewsItem:
    """Produce one future-news item for a validated scenario.

    Raises :class:`ProviderError` on provider failure (nothing persisted by
    the caller) and :class:`StructuredOutputError` when the reply cannot be
    parsed even after one reformat retry.
    """
    config = config or EngineConfig()
    now = now or datetime.now(timezone.utc)

    anchors = retrieve_anchors(index, scenario, config.k_anchor, config.body_boost)
    query = scenario_query_text(scenario.celestial_body, scenario.mission_name,
                                scenario.question)
    style = retrieve_style(index, query, config.k_style) if query.strip() else []

    prompt = assemble_prompt(scenario, anchors, style, config.prompt_budget,
                             archive=archive, library=library)
    rendered = prompt.render()

    raw = provider.complete(rendered, seed, config.provider_timeout)
    try:
        reply = parse_structured_reply(raw)
    except ReplyParseError:
        raw = provider.complete(rendered + _REFORMAT_NUDGE, seed,
                                config.provider_timeout)
        try:
            reply = parse_structured_reply(raw)
        except ReplyParseError as exc:
            raise StructuredOutputError(
                f"provider {provider.provider_id} reply unparseable after "
                f"one reformat retry: {exc}") from exc

    realizability = score_realizability(scenario, anchors, now.date(),
                                        config.realizability)

    alt_text = reply.media_brief or reply.headline
    uri = provider.generate_media(reply.media_brief, seed)
    if uri is None:
        media = MediaDescriptor(kind="placeholder", alt_text=alt_text,
                                provider_id=provider.provider_id)
    else:
        media = MediaDescriptor(kind="image", alt_text=alt_text,
                                provider_id=provider.provider_id, uri=uri)

    if provider.deterministic:
        created_at = _derived_timestamp(scenario, seed)
    else:
        created_at = now.isoformat(timespec="seconds")

    return FutureNewsItem(
        id=_item_id(scenario, seed),
        scenario=scenario,
        headline=reply.headline,
        article=reply.article,
        narration_script=reply.narration_script,
        media=media,
        realizability=realizability,
        anchors_used=tuple(a.id for a in anchors),
        fragments_used=tuple(s.id for s in style),
        created_at=created_at,
        provider_id=provider.provider_id,
        generation_seed=seed,
        plausibility_note=reply.plausibility_note,
    )
