"""Prompt assembly: preamble, factual anchors, style fragments, scenario,
and reply-format instructions, packed under a token budget.

Rendering is fully deterministic.  When the budget is tight, whole style
fragments are dropped from the bottom of the ranking first, then anchors;
the preamble, scenario block, and format instructions always ship.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ConfigurationError
from ..textproc import count_tokens

SYSTEM_PREAMBLE = (
    "You are the news desk of an international broadcaster covering space "
    "exploration. Write in the measured, professional tone of broadcast "
    "journalism: precise attributions, concrete detail, no hype. The story "
    "you file is dated in the future and reports the requested scenario as "
    "if it has just happened, grounded in the factual context and colored "
    "by the vocabulary of the style references."
)

OUTPUT_SCHEMA_INSTRUCTIONS = (
    "Reply with exactly these labeled sections, each starting on its own "
    "line:\n"
    "HEADLINE: one-sentence headline.\n"
    "ARTICLE: the full news article, 3 to 8 paragraphs.\n"
    "NARRATION: a short broadcast narration script of the story.\n"
    "MEDIA BRIEF: one sentence describing a single still image for the "
    "story.\n"
    "PLAUSIBILITY NOTE: one sentence on how plausible the events are."
)


@dataclass(frozen=True)
class PromptDocument:
    system_preamble: str
    factual_anchors: tuple[tuple[str, str], ...]   # (event id, excerpt)
    style_fragments: tuple[tuple[str, str], ...]   # (fragment id, text)
    scenario_block: str
    output_schema_instructions: str

    def render(self) -> str:
        parts = [self.system_preamble, ""]
        parts.append("FACTUAL CONTEXT:")
        if self.factual_anchors:
            for i, (eid, excerpt) in enumerate(self.factual_anchors, 1):
                parts.append(f"[{i}] ({eid}) {excerpt}")
        else:
            parts.append("(none)")
        parts.append("")
        parts.append("STYLE REFERENCES:")
        if self.style_fragments:
            for i, (fid, text) in enumerate(self.style_fragments, 1):
                parts.append(f"[{i}] ({fid}) {text}")
        else:
            parts.append("(none)")
        parts.append("")
        parts.append("SCENARIO:")
        parts.append(self.scenario_block)
        parts.append("")
        parts.append(self.output_schema_instructions)
        return "\n".join(parts)


def render_scenario_block(scenario) -> str:
    lines = []
    if scenario.year is not None:
        lines.append(f"Year: {scenario.year}")
    if scenario.celestial_body:
        lines.append(f"Celestial body: {scenario.celestial_body.replace('_', ' ')}")
    if scenario.mission_name:
        lines.append(f"Mission name: {scenario.mission_name}")
    if scenario.question:
        lines.append(f"Question: {scenario.question}")
    return "\n".join(lines)


def assemble_prompt(
    scenario,
    anchors: list,
    style: list,
    budget: int,
    archive=None,
    library=None,
) -> PromptDocument:
    """Build the prompt document for a scenario.

    ``anchors`` and ``style`` are retrieval results in rank order; their
    texts are resolved from ``archive`` and ``library``.  Context is added
    in rank order until the token budget runs out: anchors first (facts
    outrank flavor), then style fragments, stopping at the first entry
    that does not fit.  The budget is measured on the rendered document,
    headers and entry prefixes included.
    """
    scenario_block = render_scenario_block(scenario)

    def doc_with(anchor_pairs, style_pairs) -> PromptDocument:
        return PromptDocument(
            system_preamble=SYSTEM_PREAMBLE,
            factual_anchors=tuple(anchor_pairs),
            style_fragments=tuple(style_pairs),
            scenario_block=scenario_block,
            output_schema_instructions=OUTPUT_SCHEMA_INSTRUCTIONS,
        )

    if budget < count_tokens(doc_with((), ()).render()):
        raise ConfigurationError(
            f"prompt budget {budget} cannot fit the preamble, scenario, and "
            f"format instructions")

    anchor_pairs: list[tuple[str, str]] = []
    for result in anchors:
        event = archive.get(result.id)
        excerpt = f"{event.date} {event.title}. {event.summary}".strip()
        candidate = anchor_pairs + [(event.id, excerpt)]
        if count_tokens(doc_with(candidate, ()).render()) > budget:
            break
        anchor_pairs = candidate

    frag_texts = {f.id: f.text for f in library.fragments} if library else {}
    style_pairs: list[tuple[str, str]] = []
    for result in style:
        candidate = style_pairs + [(result.id, frag_texts[result.id])]
        if count_tokens(doc_with(anchor_pairs, candidate).render()) > budget:
            break
        style_pairs = candidate

    return doc_with(anchor_pairs, style_pairs)
