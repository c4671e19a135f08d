"""Shared fixtures: a small literal archive, reference library, and index."""

from __future__ import annotations

import pytest

from cosmic.archive import Archive, HistoricalEvent
from cosmic.corpus.types import Fragment, ReferenceLibrary
from cosmic.retrieval import build_index


@pytest.fixture(scope="session")
def small_archive() -> Archive:
    events = (
        HistoricalEvent(
            id="sputnik1", date="1957-10-04", title="First artificial satellite reaches orbit",
            summary="A pressurized sphere begins transmitting from low Earth orbit.",
            body="A pressurized sphere begins transmitting from low Earth orbit. "
                 "Tracking stations worldwide confirm the signal.",
            celestial_body="earth_orbit", mission_type="satellite",
            mission_name="Sputnik 1", source_url="https://example.org/sputnik1",
            image_refs=("img/sputnik.jpg",),
        ),
        HistoricalEvent(
            id="vostok1", date="1961-04-12", title="First human orbits the Earth",
            summary="A single-pilot capsule completes one orbit and lands safely.",
            body="A single-pilot capsule completes one orbit and lands safely.",
            celestial_body="earth_orbit", mission_type="crewed",
            mission_name="Vostok 1", source_url="https://example.org/vostok1",
        ),
        HistoricalEvent(
            id="apollo11", date="1969-07-20", title="Crew walks on the Moon",
            summary="Two astronauts step onto the lunar surface while a third orbits.",
            body="Two astronauts step onto the lunar surface while a third orbits above.",
            celestial_body="moon", mission_type="crewed",
            mission_name="Apollo 11", source_url="https://example.org/apollo11",
            image_refs=("img/apollo11.jpg",),
        ),
        HistoricalEvent(
            id="viking1", date="1976-07-20", title="Lander returns pictures from Mars",
            summary="The first fully successful Mars surface mission sends photographs home.",
            body="The first fully successful Mars surface mission sends photographs home.",
            celestial_body="mars", mission_type="lander",
            mission_name="Viking 1",
        ),
        HistoricalEvent(
            id="voyager1-interstellar", date="2012-08-25",
            title="Probe crosses into interstellar space",
            summary="A long-running probe leaves the heliosphere carrying a golden record.",
            body="A long-running probe leaves the heliosphere carrying a golden record.",
            celestial_body="interstellar", mission_type="probe",
            mission_name="Voyager 1",
        ),
        HistoricalEvent(
            id="perseverance", date="2021-02-18", title="Rover lands on Mars to seek past life",
            summary="A rover touches down in an ancient crater lake bed on Mars.",
            body="A rover touches down in an ancient crater lake bed on Mars.",
            celestial_body="mars", mission_type="rover",
            mission_name="Perseverance",
        ),
    )
    return Archive(events=events, metadata={"source": "fixture"})


@pytest.fixture(scope="session")
def small_library() -> ReferenceLibrary:
    texts = {
        "frag-colony": ("The colony domes caught the pale sunrise over Mars, and the "
                        "terraforming rigs breathed their slow plumes into the thin air."),
        "frag-signal": ("An alien signal threaded the relay beacons, patient as erosion, "
                        "older than any civilization that might answer it."),
        "frag-ship": ("The starship spread its fusion sail beyond the orbit of Neptune, "
                      "hull singing with the charge of interstellar dust."),
        "frag-station": ("Cargo freighters queued along the orbital station's spine while "
                         "the shipyard lights flickered like a shore town at dusk."),
        "frag-robot": ("A maintenance android walked the habitat ring at night, counting "
                       "rivets, reciting the names of the crew it kept alive."),
        "frag-moon": ("On the lunar farside the observatory domes opened in silence, "
                      "mirrors drinking starlight no city had ever diluted."),
    }
    themes = {
        "frag-colony": "planetary_engineering",
        "frag-signal": "first_contact",
        "frag-ship": "deep_space_travel",
        "frag-station": "orbital_industry",
        "frag-robot": "machine_intelligence",
        "frag-moon": "general",
    }
    fragments = [
        Fragment(id=fid, text=text, source_group="classic_literature",
                 language="en", parent_id=fid.split("-")[1],
                 theme_tags=(themes[fid],), relevance_score=0.6,
                 length_tokens=len(text.split()))
        for fid, text in texts.items()
    ]
    groups: dict[str, list[str]] = {}
    for fid, label in themes.items():
        groups.setdefault(label, []).append(fid)
    return ReferenceLibrary(fragments=fragments, groups=groups, target_count=218)


@pytest.fixture(scope="session")
def small_index(small_library, small_archive):
    return build_index(small_library, small_archive)
