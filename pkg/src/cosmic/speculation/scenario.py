"""Scenario validation: the user's semi-structured future conditions."""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timezone

from ..archive import normalize_body
from ..errors import ValidationError
from ..textproc import normalize_text

MAX_MISSION_NAME = 120
MAX_QUESTION = 500
MAX_YEARS_AHEAD = 1000


@dataclass(frozen=True)
class ScenarioSpec:
    year: int | None = None
    celestial_body: str | None = None
    mission_name: str | None = None
    question: str | None = None
    body_warning: str | None = None   # set when an unknown tag mapped to `other`

    def to_dict(self) -> dict:
        d = {
            "year": self.year,
            "celestial_body": self.celestial_body,
            "mission_name": self.mission_name,
            "question": self.question,
        }
        if self.body_warning:
            d["body_warning"] = self.body_warning
        return d

    def canonical(self) -> str:
        """Stable string identity of the scenario (hashing, determinism)."""
        return "|".join([
            str(self.year or ""), self.celestial_body or "",
            self.mission_name or "", self.question or "",
        ])


def resolve_scenario(raw: dict, now: datetime | None = None) -> ScenarioSpec:
    """Trim, normalize, and validate raw form input.

    At least one field must be present; the year must fall within
    [current year, current year + 1000].  Unknown celestial bodies map to
    ``other`` with a warning rather than being rejected.
    """
    now = now or datetime.now(timezone.utc)
    current_year = now.year

    def clean(key: str) -> str | None:
        value = raw.get(key)
        if value is None:
            return None
        text = normalize_text(str(value))
        return text or None

    year_raw = raw.get("year")
    year: int | None = None
    if year_raw is not None and str(year_raw).strip():
        try:
            year = int(str(year_raw).strip())
        except ValueError:
            raise ValidationError(f"year {year_raw!r} is not an integer")
        if year < current_year:
            raise ValidationError(
                f"year {year} is below current_year {current_year}")
        if year > current_year + MAX_YEARS_AHEAD:
            raise ValidationError(
                f"year {year} exceeds current_year + {MAX_YEARS_AHEAD}")

    body_raw = clean("celestial_body")
    body = None
    warning = None
    if body_raw:
        body = normalize_body(body_raw)
        if body == "other" and body_raw.lower() != "other":
            warning = f"unknown celestial body {body_raw!r} mapped to 'other'"

    mission = clean("mission_name")
    if mission and len(mission) > MAX_MISSION_NAME:
        raise ValidationError(
            f"mission_name exceeds {MAX_MISSION_NAME} characters")

    question = clean("question")
    if question and len(question) > MAX_QUESTION:
        raise ValidationError(f"question exceeds {MAX_QUESTION} characters")

    if year is None and body is None and mission is None and question is None:
        raise ValidationError("empty scenario")

    return ScenarioSpec(year=year, celestial_body=body, mission_name=mission,
                        question=question, body_warning=warning)
