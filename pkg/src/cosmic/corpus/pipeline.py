"""End-to-end corpus pipeline: raw collections in, reference library out.

Stage order: normalize -> deduplicate -> length filter -> relevance filter
-> segment -> fragment length filter -> score -> theme grouping ->
representative selection.  Every stage is a pure function, so identical
inputs and config produce a byte-identical library file.

Input layout: a directory of newline-delimited JSON files (one raw item per
line) with an optional ``manifest.json`` mapping subdirectories to source
groups and default languages.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .dedup import DEFAULT_SHINGLE_SIZE, deduplicate
from .filters import filter_by_length
from .relevance import (DEFAULT_SATURATION, group_by_theme, load_lexicon,
                        load_theme_lexicons, score_relevance)
from .segment import segment
from .select import DEFAULT_TARGET_COUNT, select_representatives
from .stats import corpus_stats
from .types import SOURCE_GROUPS, Fragment, RawItem, ReferenceLibrary
from ..errors import ConfigurationError, IngestionError
from ..textproc import normalize_text


@dataclass
class PipelineConfig:
    near_dup_threshold: float = 0.85
    shingle_size: int = DEFAULT_SHINGLE_SIZE
    min_len: int = 40
    max_len: int = 400
    relevance_threshold: float = 0.2
    saturation: float = DEFAULT_SATURATION
    segment_target: int = 160
    segment_overlap: int = 20
    target_count: int = DEFAULT_TARGET_COUNT
    lexicon_path: str | None = None
    theme_lexicons_path: str | None = None

    def validate(self) -> None:
        if not 0.0 <= self.near_dup_threshold <= 1.0:
            raise ConfigurationError("near_dup_threshold must be in [0, 1]")
        if self.min_len <= 0 or self.min_len > self.max_len:
            raise ConfigurationError("length window must satisfy 0 < min_len <= max_len")
        if not 0.0 <= self.relevance_threshold <= 1.0:
            raise ConfigurationError("relevance_threshold must be in [0, 1]")
        if self.segment_overlap < 0 or self.segment_overlap >= self.segment_target:
            raise ConfigurationError("segment_overlap must be in [0, segment_target)")
        if self.target_count <= 0:
            raise ConfigurationError("target_count must be positive")

    @classmethod
    def from_file(cls, path: str | Path) -> "PipelineConfig":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ConfigurationError(f"unknown pipeline config keys: {sorted(unknown)}")
        cfg = cls(**data)
        cfg.validate()
        return cfg


@dataclass
class PipelineReport:
    stages: list[dict] = field(default_factory=list)

    def record(self, stage: str, before: int, after: int) -> None:
        self.stages.append({"stage": stage, "in": before, "out": after,
                            "dropped": before - after})

    def to_dict(self) -> dict:
        return {"stages": self.stages}


def load_raw_items(input_dir: str | Path) -> tuple[list[RawItem], list[dict]]:
    """Read raw items from NDJSON files under ``input_dir``.

    ``manifest.json`` maps subdirectory names to ``source_group`` (and a
    default ``language``); line-level fields override the manifest.  Files
    are processed in sorted path order so loading is deterministic.
    Unusable lines are skipped and reported.
    """
    input_dir = Path(input_dir)
    if not input_dir.is_dir():
        raise IngestionError(f"input directory {input_dir} does not exist")

    manifest: dict[str, dict] = {}
    manifest_path = input_dir / "manifest.json"
    if manifest_path.exists():
        manifest = json.loads(manifest_path.read_text(encoding="utf-8")).get("subdirs", {})

    items: list[RawItem] = []
    skipped: list[dict] = []
    seen_ids: set[str] = set()
    files = sorted(p for p in input_dir.rglob("*") if p.suffix in {".ndjson", ".jsonl"})
    for path in files:
        rel = path.relative_to(input_dir)
        defaults = manifest.get(rel.parts[0], {}) if len(rel.parts) > 1 else {}
        for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
            if not line.strip():
                continue
            where = {"file": str(rel), "line": lineno}
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                skipped.append({**where, "reason": f"invalid JSON: {exc}"})
                continue
            group = record.get("source_group") or defaults.get("source_group")
            if group not in SOURCE_GROUPS:
                skipped.append({**where, "reason": f"unknown source_group {group!r}"})
                continue
            text = record.get("text") or ""
            if not str(text).strip():
                skipped.append({**where, "reason": "empty text"})
                continue
            item_id = str(record.get("id") or f"{rel}:{lineno}")
            if item_id in seen_ids:
                skipped.append({**where, "reason": f"duplicate id {item_id!r}"})
                continue
            seen_ids.add(item_id)
            items.append(RawItem(
                id=item_id,
                text=str(text),
                source_group=group,
                language=record.get("language") or defaults.get("language") or "en",
            ))
    return items, skipped


def run_pipeline(
    items: list[RawItem],
    config: PipelineConfig | None = None,
) -> tuple[ReferenceLibrary, PipelineReport]:
    """Run the full pipeline over already-loaded raw items."""
    config = config or PipelineConfig()
    config.validate()
    lexicon = load_lexicon(config.lexicon_path)
    themes = load_theme_lexicons(config.theme_lexicons_path)
    report = PipelineReport()

    n0 = len(items)
    items = [i.replace_text(normalize_text(i.text)) for i in items]
    items = [i for i in items if i.text]
    report.record("normalize", n0, len(items))

    n0 = len(items)
    items = deduplicate(items, config.near_dup_threshold, config.shingle_size)
    report.record("deduplicate", n0, len(items))

    n0 = len(items)
    items = filter_by_length(items, config.min_len, config.max_len)
    report.record("length_filter", n0, len(items))

    n0 = len(items)
    items = [i for i in items
             if score_relevance(i, lexicon, config.saturation) >= config.relevance_threshold]
    report.record("relevance_filter", n0, len(items))

    fragments: list[Fragment] = []
    for item in items:
        fragments.extend(segment(item, config.segment_target, config.segment_overlap))
    report.record("segment", len(items), len(fragments))

    n0 = len(fragments)
    fragments = [f for f in fragments
                 if config.min_len <= f.length_tokens <= config.max_len]
    report.record("fragment_length_filter", n0, len(fragments))

    fragments = [
        Fragment(
            id=f.id, text=f.text, source_group=f.source_group,
            language=f.language, parent_id=f.parent_id,
            relevance_score=score_relevance(f, lexicon, config.saturation),
            length_tokens=f.length_tokens,
        )
        for f in fragments
    ]

    groups = group_by_theme(fragments, themes)
    theme_of = {fid: label for label, fids in groups.items() for fid in fids}
    fragments = [
        Fragment(
            id=f.id, text=f.text, source_group=f.source_group,
            language=f.language, parent_id=f.parent_id,
            theme_tags=(theme_of[f.id],),
            relevance_score=f.relevance_score,
            length_tokens=f.length_tokens,
        )
        for f in fragments
    ]

    library = select_representatives(
        fragments, config.target_count, groups=groups,
        pipeline_config=asdict(config),
    )
    report.record("select", len(fragments), len(library.fragments))
    return library, report


def save_library(library: ReferenceLibrary, path: str | Path) -> None:
    from ..archive import canonical_json
    Path(path).write_text(canonical_json(library.to_dict()) + "\n", encoding="utf-8")


def load_library(path: str | Path) -> ReferenceLibrary:
    return ReferenceLibrary.from_dict(
        json.loads(Path(path).read_text(encoding="utf-8")))


def build_corpus(input_dir: str | Path, out_dir: str | Path,
                 config: PipelineConfig | None = None) -> dict:
    """CLI entry: run the pipeline over a directory, write the artifacts."""
    from ..archive import canonical_json
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    items, skipped = load_raw_items(input_dir)
    library, report = run_pipeline(items, config)
    stats = corpus_stats(items)
    report.stages.insert(0, {"stage": "load", "in": len(items) + len(skipped),
                             "out": len(items), "dropped": len(skipped)})

    save_library(library, out / "library.json")
    (out / "stats.json").write_text(canonical_json(stats.to_dict()) + "\n", "utf-8")
    (out / "pipeline-report.json").write_text(
        canonical_json({**report.to_dict(), "skipped_lines": skipped}) + "\n", "utf-8")
    return {"items": len(items), "fragments": len(library.fragments),
            "out": str(out)}
