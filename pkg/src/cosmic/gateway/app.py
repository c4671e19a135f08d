"""HTTP gateway: the single integration point for both phases.

All state except the tunnel store is loaded once at boot and immutable
afterwards.  POST /api/speculate is the only mutating route; it is gated
by a non-blocking semaphore sized to the configured concurrency limit and
answers 429 when saturated.  Every non-2xx body is an ApiError object.
"""

from __future__ import annotations

import logging
import random
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import anyio

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .config import ServiceConfig
from .. import archive as archive_mod
from ..corpus.pipeline import load_library
from ..errors import (ConfigurationError, ConflictError, CosmicError,
                      NotFoundError, ProviderError, StructuredOutputError,
                      ValidationError)
from ..retrieval import build_index
from ..speculation.engine import generate
from ..speculation.providers import GenerationProvider, build_provider
from ..speculation.scenario import resolve_scenario
from ..tunnel import TunnelStore, browse, layout

logger = logging.getLogger("cosmic.gateway")


def api_error(status: int, code: str, message: str, detail=None) -> JSONResponse:
    body = {"code": code, "message": message}
    if detail is not None:
        body["detail"] = detail
    return JSONResponse(status_code=status, content=body)


@dataclass
class GatewayState:
    config: ServiceConfig
    archive: "archive_mod.Archive | None"
    library: object | None
    index: object | None
    store: TunnelStore
    provider: GenerationProvider
    gate: threading.BoundedSemaphore


def _load_state(config: ServiceConfig,
                provider: GenerationProvider | None) -> GatewayState:
    arch = None
    lib = None
    index = None
    if Path(config.archive_path).exists():
        arch = archive_mod.load_archive(config.archive_path)
    else:
        logger.warning("archive file %s missing; phase 1 disabled", config.archive_path)
    if Path(config.library_path).exists():
        lib = load_library(config.library_path)
    else:
        logger.warning("library file %s missing; speculation disabled", config.library_path)
    if arch is not None and lib is not None and arch.events and lib.fragments:
        index = build_index(lib, arch)
    if provider is None:
        provider = build_provider(config.provider_id, config.provider_endpoint,
                                  config.credential_env, config.provider_timeout)
    return GatewayState(
        config=config,
        archive=arch,
        library=lib,
        index=index,
        store=TunnelStore(config.tunnel_path),
        provider=provider,
        gate=threading.BoundedSemaphore(config.concurrency_limit),
    )


def _int_param(raw: str | None, name: str, default: int | None = None) -> int | None:
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"{name} must be an integer, got {raw!r}")


def _float_param(raw: str | None, name: str, default: float) -> float:
    if raw is None or raw == "":
        return default
    try:
        return float(raw)
    except ValueError:
        raise ValidationError(f"{name} must be a number, got {raw!r}")


def create_app(config: ServiceConfig,
               provider: GenerationProvider | None = None) -> FastAPI:
    """Build the service; ``provider`` overrides the configured one (tests
    inject stubs this way)."""
    config.validate()
    state = _load_state(config, provider)
    app = FastAPI(title="cosmic gateway", docs_url=None, redoc_url=None)
    app.state.cosmic = state

    app.add_middleware(
        CORSMiddleware,
        allow_origins=config.cors_origins,
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(CosmicError)
    def handle_cosmic_error(request: Request, exc: CosmicError):
        if isinstance(exc, ValidationError):
            return api_error(400, "validation", str(exc))
        if isinstance(exc, ConfigurationError):
            return api_error(400, "validation", str(exc))
        if isinstance(exc, NotFoundError):
            return api_error(404, "not_found", str(exc))
        if isinstance(exc, ConflictError):
            return api_error(409, "conflict", str(exc))
        if isinstance(exc, ProviderError):
            return api_error(503, "provider_unavailable", str(exc),
                             detail={"provider_id": exc.provider_id,
                                     "retry_safe": exc.retry_safe})
        if isinstance(exc, StructuredOutputError):
            return api_error(503, "provider_unavailable", str(exc))
        logger.exception("unhandled service error")
        return api_error(500, "internal", str(exc))

    def require_archive() -> archive_mod.Archive:
        if state.archive is None:
            raise CosmicError("archive not loaded")
        return state.archive

    @app.get("/api/events")
    def list_events_route(year_min: str | None = None, year_max: str | None = None,
                          body: str | None = None, mission_type: str | None = None,
                          q: str | None = None, offset: str | None = None,
                          limit: str | None = None):
        arch = require_archive()
        flt = archive_mod.EventFilter(
            year_min=_int_param(year_min, "year_min"),
            year_max=_int_param(year_max, "year_max"),
            celestial_body=archive_mod.normalize_body(body) if body else None,
            mission_type=archive_mod.normalize_mission_type(mission_type) if mission_type else None,
            free_text=q or None,
        )
        page, total = archive_mod.list_events(
            arch, flt,
            offset=_int_param(offset, "offset", 0),
            limit=_int_param(limit, "limit", 20),
        )
        summaries = []
        for e in page:
            d = e.to_dict()
            d.pop("body")          # feed summaries exclude the full article
            summaries.append(d)
        return {"items": summaries, "total": total}

    @app.get("/api/events/{event_id}")
    def get_event_route(event_id: str):
        return require_archive().get(event_id).to_dict()

    @app.get("/api/timeline")
    def timeline_route():
        return [t.to_dict() for t in archive_mod.timeline(require_archive())]

    @app.post("/api/speculate")
    async def speculate_route(request: Request):
        try:
            payload = await request.json()
        except Exception:
            raise ValidationError("request body is not valid JSON")
        if not isinstance(payload, dict):
            raise ValidationError("request body must be a JSON object")
        if state.index is None:
            raise CosmicError("retrieval index not initialized")

        scenario = resolve_scenario(payload)
        seed_raw = payload.get("seed")
        if seed_raw is None:
            seed = random.SystemRandom().randrange(2**31)
        else:
            try:
                seed = int(seed_raw)
            except (TypeError, ValueError):
                raise ValidationError(f"seed must be an integer, got {seed_raw!r}")

        if not state.gate.acquire(blocking=False):
            return api_error(
                429, "provider_unavailable",
                "speculation concurrency limit reached; retry shortly",
                detail={"retry_after_seconds": 2})
        try:
            item = await anyio.to_thread.run_sync(
                lambda: generate(scenario, state.provider, seed, state.index,
                                 state.library, state.archive,
                                 state.config.engine_config()))
        finally:
            state.gate.release()
        state.store.append(item)
        return item.to_dict()

    @app.get("/api/tunnel")
    def tunnel_route(year_min: str | None = None, year_max: str | None = None,
                     offset: str | None = None, limit: str | None = None):
        page, total = browse(
            state.store,
            year_min=_int_param(year_min, "year_min"),
            year_max=_int_param(year_max, "year_max"),
            offset=_int_param(offset, "offset", 0),
            limit=_int_param(limit, "limit", 50),
        )
        return {"items": [i.to_dict() for i in page], "total": total}

    @app.get("/api/tunnel/layout")
    def layout_route(year_min: str | None = None, year_max: str | None = None):
        lo = _int_param(year_min, "year_min")
        hi = _int_param(year_max, "year_max")
        if lo is None or hi is None:
            years = [i.display_year for i in state.store.snapshot()]
            this_year = datetime.now(timezone.utc).year
            lo = lo if lo is not None else (min(years) if years else this_year)
            hi = hi if hi is not None else (max(years) if years else lo)
        if lo > hi:
            raise ValidationError(f"empty year range [{lo}, {hi}]")
        result = layout(state.store, lo, hi,
                        r_min=state.config.r_min, r_max=state.config.r_max)
        return result.to_dict()

    @app.get("/healthz")
    def healthz_route():
        health = {
            "status": "ok",
            "archive_loaded": state.archive is not None,
            "library_loaded": state.library is not None,
            "provider_id": state.provider.provider_id,
            "tunnel_count": len(state.store),
        }
        if state.archive is None or state.library is None:
            health["status"] = "degraded"
            return api_error(503, "internal", "service not fully initialized",
                             detail=health)
        return health

    return app


def serve(config: ServiceConfig) -> None:
    import uvicorn
    app = create_app(config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")
