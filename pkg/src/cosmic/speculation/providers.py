"""Pluggable generation providers.

The provider contract is a single text-in/text-out call with a timeout —
the simplest shape every real LLM HTTP API can satisfy.  The deterministic
mock provider is always available so the whole pipeline runs end to end
with zero network; it fills templates from the prompt's own scenario block
and style vocabulary, seeded, so the output is a pure function of
(prompt, seed).
"""

from __future__ import annotations

import hashlib
import os
import random
import re

import httpx

from ..errors import ConfigurationError, ProviderError

DEFAULT_TIMEOUT = 60.0


class GenerationProvider:
    """Base provider; subclasses implement :meth:`complete`."""

    provider_id: str = "base"
    capabilities = frozenset({"text"})
    deterministic = False

    def complete(self, prompt: str, seed: int, timeout: float = DEFAULT_TIMEOUT) -> str:
        raise NotImplementedError

    def generate_media(self, brief: str, seed: int):
        """Return a media URI for the brief, or None when text-only."""
        return None


def _section(prompt: str, header: str) -> str:
    m = re.search(rf"^{re.escape(header)}\n(.*?)(?:\n\n|\Z)", prompt,
                  re.DOTALL | re.MULTILINE)
    return m.group(1) if m else ""


def _scenario_field(block: str, label: str) -> str | None:
    m = re.search(rf"^{re.escape(label)}: (.+)$", block, re.MULTILINE)
    return m.group(1) if m else None


class MockProvider(GenerationProvider):
    """Seeded template filling over the prompt's retrieved vocabulary."""

    provider_id = "mock"
    deterministic = True

    def complete(self, prompt: str, seed: int, timeout: float = DEFAULT_TIMEOUT) -> str:
        digest = hashlib.sha256(prompt.encode("utf-8")).hexdigest()
        rng = random.Random(f"{seed}:{digest}")

        scenario = _section(prompt, "SCENARIO:")
        year = _scenario_field(scenario, "Year") or "the coming decades"
        body = _scenario_field(scenario, "Celestial body") or "deep space"
        mission = _scenario_field(scenario, "Mission name")
        question = _scenario_field(scenario, "Question")

        style = _section(prompt, "STYLE REFERENCES:")
        vocab = []
        seen = set()
        for word in re.findall(r"[A-Za-z][a-z]{4,}", style):
            w = word.lower()
            if w not in seen:
                seen.add(w)
                vocab.append(w)
        if len(vocab) < 6:
            vocab += ["horizon", "beacon", "threshold", "relay", "survey",
                      "corridor"]
        picks = [vocab[rng.randrange(len(vocab))] for _ in range(6)]

        subject = mission or f"the {body} program"
        headline = (f"{subject.title()} Confirms {picks[0].title()} "
                    f"Milestone Over {body.title()}")
        question_line = (f" Officials framed the result as a first answer to "
                         f"the standing question: {question}" if question else "")
        article = (
            f"Correspondents reported today that {subject} has reached a "
            f"stage few considered possible before {year}. Mission control "
            f"described a {picks[1]} sequence unfolding above {body}, with "
            f"telemetry showing the {picks[2]} array performing beyond its "
            f"rated margins.{question_line}\n"
            f"Independent observers confirmed the signal through the "
            f"{picks[3]} network. Agencies on three continents called the "
            f"step decisive for the {picks[4]} era, while cautioning that "
            f"verification will continue through the year.\n"
            f"A full technical disclosure is expected to follow peer "
            f"review."
        )
        narration = (
            f"Tonight: word from {body} that {subject} has crossed a "
            f"threshold long thought out of reach. We begin with the "
            f"{picks[1]} sequence and what it means for {year}."
        )
        media = (f"Still image: {body} on the horizon with the {picks[2]} "
                 f"array of {subject} in silhouette.")
        note = rng.choice([
            "Extrapolates current engineering roadmaps by one step.",
            "Consistent with published mission studies, timing uncertain.",
            "Requires capabilities beyond any funded program.",
        ])
        return (f"HEADLINE: {headline}\n"
                f"ARTICLE: {article}\n"
                f"NARRATION: {narration}\n"
                f"MEDIA BRIEF: {media}\n"
                f"PLAUSIBILITY NOTE: {note}")


class HttpProvider(GenerationProvider):
    """Generic JSON-over-HTTP text provider.

    POSTs ``{"prompt": ..., "seed": ...}`` to the endpoint and expects
    ``{"text": ...}`` back.  The credential is read from the configured
    environment variable at call time and never logged.
    """

    def __init__(self, provider_id: str, endpoint: str,
                 credential_env: str | None = None,
                 timeout: float = DEFAULT_TIMEOUT):
        if not endpoint:
            raise ConfigurationError("http provider requires an endpoint")
        self.provider_id = provider_id
        self.endpoint = endpoint
        self.credential_env = credential_env
        self.timeout = timeout

    def complete(self, prompt: str, seed: int, timeout: float | None = None) -> str:
        headers = {}
        if self.credential_env:
            credential = os.environ.get(self.credential_env)
            if credential:
                headers["Authorization"] = f"Bearer {credential}"
        try:
            response = httpx.post(
                self.endpoint,
                json={"prompt": prompt, "seed": seed},
                headers=headers,
                timeout=timeout or self.timeout,
            )
        except httpx.TimeoutException as exc:
            raise ProviderError(f"provider timed out: {exc}",
                                self.provider_id, retry_safe=True) from exc
        except httpx.HTTPError as exc:
            raise ProviderError(f"provider unreachable: {exc}",
                                self.provider_id, retry_safe=True) from exc
        if response.status_code != 200:
            raise ProviderError(
                f"provider returned HTTP {response.status_code}",
                self.provider_id, retry_safe=True)
        try:
            text = response.json()["text"]
        except (ValueError, KeyError) as exc:
            raise ProviderError("provider reply carried no text field",
                                self.provider_id, retry_safe=False) from exc
        return str(text)


def build_provider(provider_id: str, endpoint: str | None = None,
                   credential_env: str | None = None,
                   timeout: float = DEFAULT_TIMEOUT) -> GenerationProvider:
    """Instantiate a provider by id; 'mock' needs no configuration."""
    if provider_id == "mock":
        return MockProvider()
    if endpoint:
        return HttpProvider(provider_id, endpoint, credential_env, timeout)
    raise ConfigurationError(
        f"provider {provider_id!r} requires an endpoint (only 'mock' is built in)")
