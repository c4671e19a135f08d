"""The shared future archive: an append-only store plus tunnel geometry.

Persistence is a newline-delimited JSON log (`tunnel.ndjson`), one
canonical item per line: crash-safe, trivially inspectable, and adequate
at exhibition scale.  Published futures are never edited or deleted.

Geometry: time runs along the tunnel axis, realizability sets the distance
from the axis (more realizable = closer), and a stable id hash spreads
items around the circumference.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import threading
from dataclasses import dataclass
from pathlib import Path

from .archive import canonical_json
from .errors import ConfigurationError, ConflictError, ValidationError
from .speculation.engine import FutureNewsItem

DEFAULT_R_MIN = 0.5
DEFAULT_R_MAX = 5.0


@dataclass(frozen=True)
class TunnelPlacement:
    item_id: str
    axial: float
    radius: float
    angle: float

    def to_dict(self) -> dict:
        return {"item_id": self.item_id, "axial": self.axial,
                "radius": self.radius, "angle": self.angle}


@dataclass(frozen=True)
class TunnelLayout:
    placements: tuple[TunnelPlacement, ...]
    axis_domain: tuple[int, int]
    params: dict

    def to_dict(self) -> dict:
        return {
            "axis_domain": list(self.axis_domain),
            "params": self.params,
            "placements": [p.to_dict() for p in self.placements],
        }


def radius_for(realizability: int, r_min: float, r_max: float) -> float:
    """Linear map: 100 -> r_min (on the axis), 0 -> r_max (the wall)."""
    return r_min + (1.0 - realizability / 100.0) * (r_max - r_min)


def angle_for(item_id: str) -> float:
    """Stable id-hash angle in [0, 2*pi); independent of process state."""
    digest = hashlib.sha256(item_id.encode("utf-8")).digest()
    degrees = int.from_bytes(digest[:8], "big") % 360
    return degrees * math.pi / 180.0


class TunnelStore:
    """Append-only item store backed by an NDJSON log.

    Appends are serialized by an internal lock (single-writer discipline);
    reads take an immutable snapshot and never block appends for long.  On
    open, the log is replayed; a trailing partial line from a crashed
    writer is ignored.
    """

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._items: list[FutureNewsItem] = []
        self._ids: set[str] = set()
        if self.path.exists():
            self._replay()

    def _replay(self) -> None:
        raw = self.path.read_bytes().decode("utf-8", errors="replace")
        for line in raw.split("\n"):
            if not line.strip():
                continue
            try:
                item = FutureNewsItem.from_dict(json.loads(line))
            except (json.JSONDecodeError, KeyError):
                continue   # torn tail write from a crash; item was never acked
            if item.id not in self._ids:
                self._items.append(item)
                self._ids.add(item.id)

    def append(self, item: FutureNewsItem) -> str:
        """Durably append one item; returns its id.

        The full line is written and fsynced before the append is
        acknowledged, so an acknowledged item survives a hard kill.
        """
        line = (canonical_json(item.to_dict()) + "\n").encode("utf-8")
        with self._lock:
            if item.id in self._ids:
                raise ConflictError(f"item id {item.id!r} already stored")
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "ab") as fh:
                fh.write(line)
                fh.flush()
                os.fsync(fh.fileno())
            self._items.append(item)
            self._ids.add(item.id)
        return item.id

    def snapshot(self) -> list[FutureNewsItem]:
        with self._lock:
            return list(self._items)

    def __len__(self) -> int:
        with self._lock:
            return len(self._items)

    def __contains__(self, item_id: str) -> bool:
        with self._lock:
            return item_id in self._ids


def browse(
    store: TunnelStore,
    year_min: int | None = None,
    year_max: int | None = None,
    offset: int = 0,
    limit: int = 50,
) -> tuple[list[FutureNewsItem], int]:
    """Page of items in the year range, ascending (year, created_at, id)."""
    if limit <= 0:
        raise ValidationError("limit must be positive")
    if offset < 0:
        raise ValidationError("offset must be non-negative")
    items = [
        i for i in store.snapshot()
        if (year_min is None or i.display_year >= year_min)
        and (year_max is None or i.display_year <= year_max)
    ]
    items.sort(key=lambda i: (i.display_year, i.created_at, i.id))
    return items[offset:offset + limit], len(items)


def layout(
    store: TunnelStore,
    year_min: int,
    year_max: int,
    r_min: float = DEFAULT_R_MIN,
    r_max: float = DEFAULT_R_MAX,
) -> TunnelLayout:
    """Placements for every stored item whose year falls in the range.

    axial normalizes the year over the requested range (a single-year
    range maps everything to 0); the layout is a pure function of the
    items in range and the parameters.
    """
    if r_min >= r_max:
        raise ConfigurationError(f"r_min must be below r_max, got [{r_min}, {r_max}]")
    if year_min > year_max:
        raise ConfigurationError(f"empty year range [{year_min}, {year_max}]")

    span = year_max - year_min
    placements = []
    items, _ = browse(store, year_min, year_max, limit=len(store) + 1)
    for item in items:
        axial = 0.0 if span == 0 else (item.display_year - year_min) / span
        placements.append(TunnelPlacement(
            item_id=item.id,
            axial=axial,
            radius=radius_for(item.realizability, r_min, r_max),
            angle=angle_for(item.id),
        ))
    return TunnelLayout(
        placements=tuple(placements),
        axis_domain=(year_min, year_max),
        params={"r_min": r_min, "r_max": r_max},
    )


def save_layout(tunnel_layout: TunnelLayout, path: str | Path) -> None:
    Path(path).write_text(canonical_json(tunnel_layout.to_dict()) + "\n",
                          encoding="utf-8")
