"""Deterministic generator for the committed seed corpus.

The corpus has 405 rows: one real, hand-written record (the Chemotion ELN
instructional videos, pinned to its historical id via the override column)
and 404 synthetic rows tagged with the ``synthetic-fixture`` keyword.  Two
marginals are exact by construction: 172 rows carry the bachelor target
group and 180 carry the beginner proficiency level.
"""

from __future__ import annotations

import datetime as dt
import random
from pathlib import Path

from .dif import Author, LearningResource, mint_id

TOTAL_ROWS = 405
BACHELOR_ROWS = 172
BEGINNER_ROWS = 180

CHEMOTION_ID = "b37ddf6e-f136-4230-8418-faf18c4c34d2"

_TOPICS = [
    "data management plans", "metadata annotation", "electronic lab notebooks",
    "repository deposition", "persistent identifiers", "data licensing",
    "spectroscopy data handling", "crystallography archiving",
    "versioning research software", "ontology curation", "data provenance",
    "machine-actionable protocols", "open licensing basics",
    "structured vocabularies", "archiving lab journals",
]
_FORMS = ["introduction to", "hands-on course on", "seminar series about",
          "screencast on", "exercise set for", "reading guide to"]
_KEYWORD_POOL = [
    "research data", "fair principles", "metadata", "eln", "repositories",
    "curation", "reproducibility", "open science", "data literacy",
    "spectroscopy", "licensing", "ontologies",
]
_GIVEN = ["Anna", "Jonas", "Miriam", "Felix", "Clara", "Lukas", "Sofia",
          "Erik", "Helena", "Paul", "Ida", "Tobias"]
_FAMILY = ["Weber", "Fischer", "Schmidt", "Keller", "Brandt", "Hoffmann",
           "Lorenz", "Vogt", "Brenner", "Kaiser", "Winter", "Stein"]

_RESOURCE_TYPES = ["dalia-rt:lecture", "dalia-rt:tutorial", "dalia-rt:podcast",
                   "dalia-rt:course", "dalia-rt:exercise", "dalia-rt:seminar"]
_MEDIA_TYPES = ["dalia-mt:text", "dalia-mt:audio", "dalia-mt:video"]
_DISCIPLINES = ["dalia-dc:chemistry", "dalia-dc:inorganic-chemistry",
                "dalia-dc:organic-chemistry", "dalia-dc:physics",
                "dalia-dc:biology", "dalia-dc:engineering",
                "dalia-dc:data-science", "dalia-dc:generic"]
_TARGET_OTHER = ["dalia-tg:master", "dalia-tg:doctorate"]
_PROF_OTHER = ["dalia-pl:intermediate", "dalia-pl:advanced"]
_COMMUNITIES = ["NFDI4Chem", "NFDI4Ing", "DALIA", "RDM-Trainers"]
_COLLECTIONS = ["rdm-basics", "chemistry-rdm", "tooling", "community-picks"]


def chemotion_record() -> LearningResource:
    """The one real record of the corpus, pinned to its published id."""
    return LearningResource(
        id=CHEMOTION_ID,
        title="Chemotion ELN Instructional Videos",
        description=(
            "Instructional video series introducing students to the "
            "Chemotion electronic laboratory notebook: planning, "
            "documenting, and evaluating experiments digitally, with "
            "metadata capture and repository upload for long-term reuse."),
        languages=["de", "en"],
        keywords=["chemotion", "eln", "research data management",
                  "fair data", "teaching videos"],
        license="CC-BY-4.0",
        external_url="https://zenodo.org/records/chemotion-eln-instructional-videos",
        date_published=dt.date(2023, 2, 15),
        authors=[Author("Fink, A.", "0000-0002-1825-0097"),
                 Author("Herres-Pawlis, S.")],
        resource_types=["dalia-rt:tutorial"],
        media_types=["dalia-mt:video"],
        disciplines=["dalia-dc:inorganic-chemistry"],
        target_groups=["dalia-tg:bachelor"],
        proficiency_levels=["dalia-pl:beginner"],
        communities=["NFDI4Chem"],
        collections=["chemistry-rdm"],
    )


def _orcid(rng: random.Random) -> str:
    digits = [str(rng.randrange(10)) for _ in range(15)]
    check = rng.choice("0123456789X")
    body = "".join(digits) + check
    return "-".join(body[i:i + 4] for i in range(0, 16, 4))


def _synthetic_record(i: int, rng: random.Random, bachelor: bool,
                      beginner: bool) -> LearningResource:
    form = rng.choice(_FORMS)
    topic = rng.choice(_TOPICS)
    title = f"{form.capitalize()} {topic} ({i:03d})"
    url = f"https://oer.example.org/resources/{i:03d}-{topic.replace(' ', '-')}"
    n_authors = rng.randint(1, 3)
    authors = [
        Author(f"{rng.choice(_GIVEN)} {rng.choice(_FAMILY)}",
               _orcid(rng) if rng.random() < 0.6 else None)
        for _ in range(n_authors)
    ]
    target_groups = ["dalia-tg:bachelor"] if bachelor else [rng.choice(_TARGET_OTHER)]
    if rng.random() < 0.15:
        extra = rng.choice(_TARGET_OTHER)
        if extra not in target_groups:
            target_groups.append(extra)
    proficiency = (["dalia-pl:beginner"] if beginner
                   else [rng.choice(_PROF_OTHER)])
    date = dt.date(2019, 1, 1) + dt.timedelta(days=rng.randrange(2000))
    return LearningResource(
        id=mint_id(url),
        title=title,
        description=(f"A {form} {topic} for students learning research data "
                     f"management practices. Part of the synthetic fixture corpus."),
        languages=rng.choice([["en"], ["de"], ["de", "en"]]),
        keywords=sorted(rng.sample(_KEYWORD_POOL, 3)) + ["synthetic-fixture"],
        license=rng.choice(["CC-BY-4.0", "CC-BY-SA-4.0", "CC0-1.0"]),
        external_url=url,
        date_published=date,
        authors=authors,
        resource_types=[rng.choice(_RESOURCE_TYPES)],
        media_types=[rng.choice(_MEDIA_TYPES)],
        disciplines=[rng.choice(_DISCIPLINES)],
        target_groups=target_groups,
        proficiency_levels=proficiency,
        communities=[rng.choice(_COMMUNITIES)],
        collections=[rng.choice(_COLLECTIONS)],
    )


def generate_seed(seed: int = 42) -> list[LearningResource]:
    """Build the 405-record corpus; deterministic for a given seed."""
    rng = random.Random(seed)
    records = [chemotion_record()]
    # the real record already carries bachelor + beginner
    flags = [(i < BACHELOR_ROWS - 1, i < BEGINNER_ROWS - 1)
             for i in range(TOTAL_ROWS - 1)]
    rng.shuffle(flags)
    for i, (bachelor, beginner) in enumerate(flags, start=1):
        records.append(_synthetic_record(i, rng, bachelor, beginner))
    return records


def write_seed(path: str | Path, seed: int = 42) -> Path:
    """Write the corpus sheet; only the real record carries an id override,
    so every synthetic row exercises the deterministic mint on ingestion."""
    import csv

    from .dif import DIF_COLUMNS, ID_OVERRIDE_COLUMN

    path = Path(path)
    records = generate_seed(seed)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(DIF_COLUMNS + [ID_OVERRIDE_COLUMN])
        for r in records:
            authors = ";".join(
                f"{a.name}|{a.identifier}" if a.identifier else a.name
                for a in r.authors)
            override = r.id if r.id == CHEMOTION_ID else ""
            writer.writerow([
                r.title, r.description, ";".join(r.languages),
                ";".join(r.keywords), r.license, r.external_url,
                r.date_published.isoformat() if r.date_published else "",
                authors, ";".join(r.resource_types), ";".join(r.media_types),
                ";".join(r.disciplines), ";".join(r.target_groups),
                ";".join(r.proficiency_levels), ";".join(r.communities),
                ";".join(r.collections), override,
            ])
    return path
