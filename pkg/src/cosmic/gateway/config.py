"""Service configuration: one declarative JSON file, credentials by
environment-variable name only (values are never serialized or logged)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import ConfigurationError
from ..speculation.engine import EngineConfig
from ..speculation.providers import DEFAULT_TIMEOUT
from ..speculation.realizability import RealizabilityParams
from ..tunnel import DEFAULT_R_MAX, DEFAULT_R_MIN


@dataclass
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8000
    archive_path: str = "archive.json"
    library_path: str = "library.json"
    tunnel_path: str = "tunnel.ndjson"
    provider_id: str = "mock"
    provider_endpoint: str | None = None
    credential_env: str | None = None
    provider_timeout: float = DEFAULT_TIMEOUT
    k_style: int = 8
    k_anchor: int = 4
    body_boost: float = 1.5
    prompt_budget: int = 2048
    tau: float = 75.0
    default_horizon: float = 75.0
    base_weight: float = 0.8
    support_weight: float = 20.0
    support_cap: float = 20.0
    r_min: float = DEFAULT_R_MIN
    r_max: float = DEFAULT_R_MAX
    concurrency_limit: int = 4
    cors_origins: list[str] = field(default_factory=lambda: ["*"])

    def validate(self) -> None:
        if not 0 < self.port < 65536:
            raise ConfigurationError(f"port {self.port} out of range")
        if self.k_style <= 0 or self.k_anchor <= 0:
            raise ConfigurationError("k_style and k_anchor must be positive")
        if self.body_boost < 1.0:
            raise ConfigurationError("body_boost must be >= 1.0")
        if self.prompt_budget <= 0:
            raise ConfigurationError("prompt_budget must be positive")
        if self.tau <= 0 or self.default_horizon < 0:
            raise ConfigurationError("tau must be positive, default_horizon >= 0")
        if self.r_min >= self.r_max:
            raise ConfigurationError("r_min must be below r_max")
        if self.concurrency_limit <= 0:
            raise ConfigurationError("concurrency_limit must be positive")
        if self.provider_timeout <= 0:
            raise ConfigurationError("provider_timeout must be positive")

    @classmethod
    def from_file(cls, path: str | Path) -> "ServiceConfig":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise ConfigurationError(f"unknown service config keys: {sorted(unknown)}")
        cfg = cls(**data)
        cfg.validate()
        return cfg

    def engine_config(self) -> EngineConfig:
        return EngineConfig(
            k_style=self.k_style,
            k_anchor=self.k_anchor,
            body_boost=self.body_boost,
            prompt_budget=self.prompt_budget,
            provider_timeout=self.provider_timeout,
            realizability=RealizabilityParams(
                tau=self.tau,
                default_horizon=self.default_horizon,
                base_weight=self.base_weight,
                support_weight=self.support_weight,
                support_cap=self.support_cap,
            ),
        )
