"""Scenario validation, prompt assembly, providers, and item generation."""

from .engine import EngineConfig, FutureNewsItem, MediaDescriptor, generate
from .prompt import (OUTPUT_SCHEMA_INSTRUCTIONS, SYSTEM_PREAMBLE,
                     PromptDocument, assemble_prompt)
from .providers import (DEFAULT_TIMEOUT, GenerationProvider, HttpProvider,
                        MockProvider, build_provider)
from .realizability import RealizabilityParams, score_realizability
from .reply import StructuredReply, parse_structured_reply
from .scenario import ScenarioSpec, resolve_scenario

__all__ = [
    "DEFAULT_TIMEOUT", "EngineConfig", "FutureNewsItem", "GenerationProvider",
    "HttpProvider", "MediaDescriptor", "MockProvider",
    "OUTPUT_SCHEMA_INSTRUCTIONS", "PromptDocument", "RealizabilityParams",
    "SYSTEM_PREAMBLE", "ScenarioSpec", "StructuredReply", "assemble_prompt",
    "build_provider", "generate", "parse_structured_reply",
    "resolve_scenario", "score_realizability",
]
