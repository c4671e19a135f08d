"""Historical space-exploration news archive: ingestion, querying, timeline.

The archive is immutable after ingestion.  Two input shapes are accepted:

* the upstream open-dataset shape — an array of records carrying at least a
  ``date`` or ``year`` plus a ``title``/``event`` text and optional detail;
* supplement files — full event records in this module's own schema, which
  win on id collision (curated reports are higher quality than the bulk
  dataset).
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field, replace
from datetime import date as Date
from datetime import datetime, timezone
from pathlib import Path
from urllib.parse import urlparse

from .errors import IngestionError, NotFoundError, ValidationError
from .textproc import normalize_text

CELESTIAL_BODIES = (
    "moon", "mars", "venus", "mercury", "jupiter", "saturn", "uranus",
    "neptune", "pluto", "sun", "earth_orbit", "interstellar", "other",
)

MISSION_TYPES = (
    "flyby", "lander", "rover", "orbiter", "crewed", "telescope", "probe",
    "station", "satellite", "other",
)

# Free-text tags seen in upstream data, mapped onto the closed enumerations.
# Unknown values fall through to `other`; they are never rejected.
_BODY_ALIASES = {
    "luna": "moon", "the moon": "moon", "lunar": "moon",
    "earth orbit": "earth_orbit", "earth-orbit": "earth_orbit",
    "leo": "earth_orbit", "orbit": "earth_orbit", "earth": "earth_orbit",
    "interstellar space": "interstellar", "deep space": "interstellar",
    "red planet": "mars",
}

_MISSION_ALIASES = {
    "human": "crewed", "manned": "crewed", "crewed mission": "crewed",
    "space station": "station", "observatory": "telescope",
    "impactor": "probe", "sample return": "probe",
}


def normalize_body(tag: str | None) -> str:
    if not tag:
        return "other"
    t = normalize_text(tag).lower().replace("-", " ").strip()
    t = _BODY_ALIASES.get(t, t.replace(" ", "_"))
    return t if t in CELESTIAL_BODIES else "other"


def normalize_mission_type(tag: str | None) -> str:
    if not tag:
        return "other"
    t = normalize_text(tag).lower().strip()
    t = _MISSION_ALIASES.get(t, t)
    return t if t in MISSION_TYPES else "other"


@dataclass(frozen=True)
class HistoricalEvent:
    id: str
    date: str                      # ISO-8601 calendar date
    title: str
    summary: str = ""
    body: str = ""
    celestial_body: str = "other"
    mission_type: str = "other"
    mission_name: str = ""
    source_url: str = ""
    image_refs: tuple[str, ...] = ()
    date_precision: str = "day"    # "day" | "year" (year-only records)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "date": self.date,
            "title": self.title,
            "summary": self.summary,
            "body": self.body,
            "celestial_body": self.celestial_body,
            "mission_type": self.mission_type,
            "mission_name": self.mission_name,
            "source_url": self.source_url,
            "image_refs": list(self.image_refs),
            "date_precision": self.date_precision,
        }

    @property
    def year(self) -> int:
        return int(self.date[:4])


@dataclass(frozen=True)
class EventFilter:
    """Conjunctive filter; an empty filter matches every event."""
    year_min: int | None = None
    year_max: int | None = None
    celestial_body: str | None = None
    mission_type: str | None = None
    free_text: str | None = None

    def matches(self, event: HistoricalEvent) -> bool:
        if self.year_min is not None and event.year < self.year_min:
            return False
        if self.year_max is not None and event.year > self.year_max:
            return False
        if self.celestial_body is not None and event.celestial_body != self.celestial_body:
            return False
        if self.mission_type is not None and event.mission_type != self.mission_type:
            return False
        if self.free_text is not None:
            needle = self.free_text.lower()
            if needle not in event.title.lower() and needle not in event.summary.lower():
                return False
        return True


@dataclass(frozen=True)
class TimelineEntry:
    date: str
    title: str
    image_ref: str | None = None
    event_id: str = ""

    def to_dict(self) -> dict:
        return {
            "date": self.date,
            "title": self.title,
            "image_ref": self.image_ref,
            "event_id": self.event_id,
        }


@dataclass(frozen=True)
class Archive:
    """Read-only event collection, sorted ascending by (date, id)."""
    events: tuple[HistoricalEvent, ...]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        by_id = {e.id: e for e in self.events}
        object.__setattr__(self, "_by_id", by_id)

    @property
    def record_count(self) -> int:
        return len(self.events)

    def get(self, event_id: str) -> HistoricalEvent:
        try:
            return self._by_id[event_id]
        except KeyError:
            raise NotFoundError(f"no event with id {event_id!r}") from None

    def __contains__(self, event_id: str) -> bool:
        return event_id in self._by_id

    def to_dict(self) -> dict:
        return {
            "metadata": dict(self.metadata, record_count=self.record_count),
            "events": [e.to_dict() for e in self.events],
        }


@dataclass
class IngestionReport:
    source: str
    skipped: list[dict] = field(default_factory=list)
    normalized: list[dict] = field(default_factory=list)
    ingested: int = 0

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "ingested": self.ingested,
            "skipped": self.skipped,
            "normalized": self.normalized,
        }


_MONTHS = {
    m.lower(): i + 1
    for i, m in enumerate(
        ["January", "February", "March", "April", "May", "June", "July",
         "August", "September", "October", "November", "December"]
    )
}


def _parse_date(raw) -> tuple[str, str]:
    """Parse a record date into (ISO date, precision).

    Accepts ISO dates, ``Month D, YYYY`` strings, and bare years.  Year-only
    values normalize to January 1 with precision ``year`` so sorting never
    invents day-level precision silently.
    """
    if isinstance(raw, int):
        return Date(raw, 1, 1).isoformat(), "year"
    s = normalize_text(str(raw))
    if re.fullmatch(r"\d{4}", s):
        return Date(int(s), 1, 1).isoformat(), "year"
    m = re.fullmatch(r"(\d{4})-(\d{2})-(\d{2})", s)
    if m:
        return Date(int(m[1]), int(m[2]), int(m[3])).isoformat(), "day"
    m = re.fullmatch(r"([A-Za-z]+)\s+(\d{1,2}),?\s+(\d{4})", s)
    if m and m[1].lower() in _MONTHS:
        return Date(int(m[3]), _MONTHS[m[1].lower()], int(m[2])).isoformat(), "day"
    raise ValueError(f"unparseable date {raw!r}")


def _derived_id(date_iso: str, title: str) -> str:
    digest = hashlib.sha1(f"{date_iso}|{title}".encode("utf-8")).hexdigest()
    return f"evt-{digest[:10]}"


def _check_url(url: str) -> str:
    if not url:
        return ""
    parsed = urlparse(url)
    if not parsed.scheme or not parsed.netloc:
        raise ValueError(f"source_url {url!r} is not an absolute URL")
    return url


def _event_from_record(record: dict, report: IngestionReport) -> HistoricalEvent:
    """Build one event from either input shape, noting normalizations."""
    if not isinstance(record, dict):
        raise ValueError("record is not an object")
    raw_date = record.get("date", record.get("year"))
    if raw_date is None:
        raise ValueError("record has no date or year")
    date_iso, precision = _parse_date(raw_date)
    precision = record.get("date_precision", precision)

    title = normalize_text(str(record.get("title") or record.get("event") or ""))
    if not title:
        raise ValueError("record has no title or event text")

    summary = normalize_text(str(record.get("summary") or record.get("detail")
                                 or record.get("description") or ""))
    body = normalize_text(str(record.get("body") or ""))
    if not summary and body:
        summary = body
    if not body:
        body = summary or title

    event_id = str(record.get("id") or _derived_id(date_iso, title))

    raw_body_tag = record.get("celestial_body")
    celestial = normalize_body(raw_body_tag)
    if raw_body_tag and celestial == "other" and str(raw_body_tag).lower() != "other":
        report.normalized.append({"id": event_id, "field": "celestial_body",
                                  "value": raw_body_tag, "mapped_to": "other"})
    raw_type_tag = record.get("mission_type")
    mission_type = normalize_mission_type(raw_type_tag)
    if raw_type_tag and mission_type == "other" and str(raw_type_tag).lower() != "other":
        report.normalized.append({"id": event_id, "field": "mission_type",
                                  "value": raw_type_tag, "mapped_to": "other"})

    images = record.get("image_refs") or record.get("images") or []
    if isinstance(images, str):
        images = [images]

    return HistoricalEvent(
        id=event_id,
        date=date_iso,
        title=title,
        summary=summary,
        body=body,
        celestial_body=celestial,
        mission_type=mission_type,
        mission_name=normalize_text(str(record.get("mission_name") or "")),
        source_url=_check_url(str(record.get("source_url") or "")),
        image_refs=tuple(str(i) for i in images),
        date_precision=precision,
    )


def _load_records(path: Path) -> list:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise IngestionError(f"cannot read dataset {path}: {exc}") from exc
    if isinstance(data, dict):
        data = [data]
    if not isinstance(data, list):
        raise IngestionError(f"dataset {path} is not a JSON array")
    return data


def ingest_archive(
    source: str | Path,
    supplements: list[str | Path] | None = None,
    ingested_at: str | None = None,
) -> tuple[Archive, IngestionReport]:
    """Build an archive from a source dataset plus optional supplements.

    Malformed records are skipped and collected into the report; an
    unreadable file aborts with :class:`IngestionError`.  Supplements win on
    id collision.  ``ingested_at`` is an explicit input so identical inputs
    serialize byte-identically; it defaults to the current UTC time.
    """
    source = Path(source)
    report = IngestionReport(source=str(source))
    merged: dict[str, HistoricalEvent] = {}

    def absorb(path: Path, origin: str):
        for idx, record in enumerate(_load_records(path)):
            try:
                event = _event_from_record(record, report)
            except ValueError as exc:
                report.skipped.append({"file": str(path), "index": idx, "reason": str(exc)})
                continue
            merged[event.id] = event   # later files (supplements) win

    absorb(source, "source")
    for supp in supplements or []:
        absorb(Path(supp), "supplement")

    events = tuple(sorted(merged.values(), key=lambda e: (e.date, e.id)))
    report.ingested = len(events)
    if ingested_at is None:
        ingested_at = datetime.now(timezone.utc).isoformat(timespec="seconds")
    archive = Archive(
        events=events,
        metadata={
            "source": str(source),
            "supplements": [str(s) for s in supplements or []],
            "ingested_at": ingested_at,
        },
    )
    return archive, report


def load_archive(path: str | Path) -> Archive:
    """Load a canonical ``archive.json`` produced by :func:`save_archive`."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    events = tuple(
        HistoricalEvent(
            id=e["id"], date=e["date"], title=e["title"],
            summary=e.get("summary", ""), body=e.get("body", ""),
            celestial_body=e.get("celestial_body", "other"),
            mission_type=e.get("mission_type", "other"),
            mission_name=e.get("mission_name", ""),
            source_url=e.get("source_url", ""),
            image_refs=tuple(e.get("image_refs", [])),
            date_precision=e.get("date_precision", "day"),
        )
        for e in data["events"]
    )
    return Archive(events=events, metadata=data.get("metadata", {}))


def save_archive(archive: Archive, path: str | Path) -> None:
    Path(path).write_text(canonical_json(archive.to_dict()) + "\n", encoding="utf-8")


def canonical_json(obj) -> str:
    """Deterministic JSON used for every serialized artifact."""
    return json.dumps(obj, ensure_ascii=False, sort_keys=True, separators=(",", ":"))


def list_events(
    archive: Archive,
    flt: EventFilter | None = None,
    offset: int = 0,
    limit: int = 50,
) -> tuple[list[HistoricalEvent], int]:
    """Feed query: matching events newest-first, with total match count."""
    if limit <= 0:
        raise ValidationError("limit must be positive")
    if offset < 0:
        raise ValidationError("offset must be non-negative")
    flt = flt or EventFilter()
    matches = [e for e in archive.events if flt.matches(e)]
    matches.reverse()   # archive order is ascending (date, id)
    return matches[offset:offset + limit], len(matches)


def get_event(archive: Archive, event_id: str) -> HistoricalEvent:
    return archive.get(event_id)


def timeline(archive: Archive) -> list[TimelineEntry]:
    """One entry per event, oldest first (the renderer draws bottom-up)."""
    return [
        TimelineEntry(
            date=e.date,
            title=e.title,
            image_ref=e.image_refs[0] if e.image_refs else None,
            event_id=e.id,
        )
        for e in archive.events
    ]
