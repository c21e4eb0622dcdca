import random
import string
from pathlib import Path

import pytest

from oerdex.dif import Author, LearningResource, mint_id
from oerdex.service import Config, Registry
from oerdex.vocab import VocabularyKind, VocabularySet

REPO_ROOT = Path(__file__).resolve().parent.parent
VOCAB_DIR = REPO_ROOT / "fixtures" / "vocab"
SEED_CSV = REPO_ROOT / "fixtures" / "seed.csv"

CHEMOTION_ID = "b37ddf6e-f136-4230-8418-faf18c4c34d2"


@pytest.fixture(scope="session")
def vocabs() -> VocabularySet:
    return VocabularySet.load_dir(VOCAB_DIR)


@pytest.fixture()
def registry() -> Registry:
    return Registry(Config(vocab_dir=VOCAB_DIR, durable=False))


@pytest.fixture(scope="session")
def seeded_registry() -> Registry:
    """Registry with the committed seed corpus ingested.  Read-only: tests
    sharing this fixture must not mutate it."""
    reg = Registry(Config(vocab_dir=VOCAB_DIR, durable=False))
    reg.ingest(SEED_CSV)
    return reg


WORDS = ["metadata", "chemie", "spektren", "notebook", "datenmanagement",
         "repository", "fair", "kristall", "archiv", "lizenz", "tutorial",
         "analyse", "protokoll", "labor", "daten"]


def random_resource(rng: random.Random, i: int,
                    vocabs: VocabularySet) -> LearningResource:
    """A small random but valid record for property-style tests."""
    def words(n):
        return " ".join(rng.choice(WORDS) for _ in range(n))

    def pick_terms(kind, max_n=2):
        terms = [t.id for t in vocabs[kind].terms]
        return rng.sample(terms, rng.randint(0, min(max_n, len(terms))))

    url = f"https://example.org/r/{i}-{rng.randrange(10**6)}"
    return LearningResource(
        id=mint_id(url),
        title=words(rng.randint(1, 4)) or "untitled",
        description=words(rng.randint(0, 12)),
        languages=rng.sample(["en", "de", "fr"], rng.randint(0, 2)),
        keywords=[rng.choice(WORDS) for _ in range(rng.randint(0, 3))],
        license=rng.choice(["", "CC-BY-4.0", "CC0-1.0"]),
        external_url=url,
        authors=[Author("".join(rng.choices(string.ascii_lowercase, k=6)).title())
                 for _ in range(rng.randint(0, 2))],
        resource_types=pick_terms(VocabularyKind.RESOURCE_TYPE),
        media_types=pick_terms(VocabularyKind.MEDIA_TYPE),
        disciplines=pick_terms(VocabularyKind.DISCIPLINE),
        target_groups=pick_terms(VocabularyKind.TARGET_GROUP),
        proficiency_levels=pick_terms(VocabularyKind.PROFICIENCY_LEVEL),
        communities=rng.sample(["NFDI4Chem", "DALIA"], rng.randint(0, 1)),
    )
