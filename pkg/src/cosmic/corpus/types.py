"""Data types moved through the corpus pipeline."""

from __future__ import annotations

from dataclasses import dataclass, field

SOURCE_GROUPS = (
    "community_narratives",
    "classic_literature",
    "chinese_scifi_webfiction",
    "screenplays_other",
)

LANGUAGES = ("en", "zh", "other")


@dataclass(frozen=True)
class RawItem:
    id: str
    text: str
    source_group: str
    language: str = "en"

    def replace_text(self, text: str) -> "RawItem":
        return RawItem(self.id, text, self.source_group, self.language)


@dataclass(frozen=True)
class Fragment:
    id: str
    text: str
    source_group: str
    language: str
    parent_id: str
    theme_tags: tuple[str, ...] = ()
    relevance_score: float = 0.0
    length_tokens: int = 0

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "text": self.text,
            "source_group": self.source_group,
            "language": self.language,
            "parent_id": self.parent_id,
            "theme_tags": list(self.theme_tags),
            "relevance_score": self.relevance_score,
            "length_tokens": self.length_tokens,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Fragment":
        return cls(
            id=d["id"], text=d["text"], source_group=d["source_group"],
            language=d["language"], parent_id=d["parent_id"],
            theme_tags=tuple(d.get("theme_tags", [])),
            relevance_score=float(d.get("relevance_score", 0.0)),
            length_tokens=int(d.get("length_tokens", 0)),
        )


@dataclass
class ReferenceLibrary:
    """The selected stylistic reference pool plus its provenance."""
    fragments: list[Fragment]
    groups: dict[str, list[str]]     # theme label -> fragment ids
    target_count: int
    pipeline_config: dict = field(default_factory=dict)
    warning: str | None = None

    def to_dict(self) -> dict:
        d = {
            "fragments": [f.to_dict() for f in self.fragments],
            "groups": {k: list(v) for k, v in self.groups.items()},
            "target_count": self.target_count,
            "pipeline_config": self.pipeline_config,
        }
        if self.warning:
            d["warning"] = self.warning
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ReferenceLibrary":
        return cls(
            fragments=[Fragment.from_dict(f) for f in d["fragments"]],
            groups={k: list(v) for k, v in d.get("groups", {}).items()},
            target_count=int(d.get("target_count", 0)),
            pipeline_config=d.get("pipeline_config", {}),
            warning=d.get("warning"),
        )


@dataclass
class CorpusStats:
    groups: dict[str, dict]          # group -> {"count": int, "percentage": float}
    total: int

    def to_dict(self) -> dict:
        return {"groups": self.groups, "total": self.total}
