"""The realizability indicator: a deterministic, auditable heuristic.

The indicator decays exponentially with how far the scenario sits beyond
the present and earns a bounded bonus from how strongly the archive
supports it.  The generation model's own plausibility note is stored on
the item but never feeds this number, so it stays reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date, datetime
from math import exp


@dataclass(frozen=True)
class RealizabilityParams:
    tau: float = 75.0              # decay horizon, years
    default_horizon: float = 75.0  # assumed look-ahead when no year is given
    base_weight: float = 0.8
    support_weight: float = 20.0
    support_cap: float = 20.0


def score_realizability(
    scenario,
    anchors: list,
    now: date | datetime,
    params: RealizabilityParams | None = None,
) -> int:
    """Integer percent in [0, 100].

    base = 100 * exp(-delta / tau) with delta the years past the present
    (the default horizon when the scenario names no year); the support
    bonus scales with the mean anchor score, each score clamped to [0, 1],
    and is capped so full support at the present day reaches exactly 100.
    Monotone: non-increasing in year, non-decreasing in anchor support.
    """
    params = params or RealizabilityParams()
    year = getattr(scenario, "year", None)
    if year is None:
        delta = params.default_horizon
    else:
        delta = max(0.0, float(year - now.year))
    base = 100.0 * exp(-delta / params.tau)

    scores = [min(1.0, max(0.0, float(a.score))) for a in anchors]
    mean = sum(scores) / len(scores) if scores else 0.0
    bonus = min(params.support_cap, params.support_weight * mean)

    value = round(base * params.base_weight + bonus)
    return max(0, min(100, int(value)))
