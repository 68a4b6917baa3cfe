import random
from pathlib import Path

import pytest

from bibspecialty.corpus import Author, Corpus, Publication
from bibspecialty.normalize import StopWordList

HERE = Path(__file__).parent
GOLDEN = HERE / "golden"
FIXTURES = HERE / "fixtures"
DEMO = HERE.parent / "src" / "bibspecialty" / "data" / "demo"


def pub(pid, title="Untitled work", source="Journal", year=2015, authors=(), refs=()):
    """Terse Publication constructor; authors may be names or (name, affiliation)."""
    auth = tuple(Author(a) if isinstance(a, str) else Author(*a) for a in authors)
    return Publication(pid, title, source, year, auth, tuple(refs))


def corpus_of(*pubs):
    return Corpus.from_publications(pubs)


@pytest.fixture
def stop():
    return StopWordList(frozenset({"the", "of", "and", "a", "in", "for"}))


_JOURNALS = ["Scientometrics", "J Informetr", "Research Evaluation", "Cell", "Nature"]
_WORDS = ["citation", "network", "specialty", "journal", "author", "bibliometric",
          "cluster", "science", "indicator", "map", "review", "peer"]
_SURNAMES = ["Verbeek", "Small", "Garfield", "Price", "Lotka", "Zipf", "Moed", "Egghe", "Waltman"]


def random_corpus(rng: random.Random, n: int) -> Corpus:
    """Small corpus over a tiny vocabulary so fields overlap often.

    About half the references cite earlier records of the same corpus, in
    the cited-reference style; the rest are outside works.
    """
    pubs = []
    cite = []
    for i in range(n):
        year = rng.randint(2000, 2017)
        source = rng.choice(_JOURNALS)
        names = rng.sample(_SURNAMES, rng.randint(0, 3))
        authors = [(f"{s}, {rng.choice('ABC')}.", rng.choice(["UHasselt", "KU Leuven", None])) for s in names]
        title = " ".join(rng.choice(_WORDS) for _ in range(rng.randint(1, 5)))
        refs = []
        for _ in range(rng.randint(0, 4)):
            if cite and rng.random() < 0.5:
                refs.append(rng.choice(cite))
            else:
                refs.append(f"{rng.choice(_SURNAMES)} {rng.choice('ABC')}, {rng.randint(1990, 2010)}, "
                            f"{rng.choice(_JOURNALS).upper()}, V{rng.randint(1, 9)}, P{rng.randint(1, 99)}")
        pid = f"R{i:03d}"
        pubs.append(pub(pid, title, source, year, authors, refs))
        if authors:
            surname, initial = authors[0][0].split(", ")
            cite.append(f"{surname} {initial.rstrip('.')}, {year}, {source.upper()}, V1, P1")
    return Corpus.from_publications(pubs)


def recount_fields(fv) -> dict:
    return {"source": fv.sources, "title_word": fv.title_words,
            "author": fv.authors, "reference": fv.references}


def brute_match_count(fv, profile) -> int:
    """Four explicit intersection tests, no shared helpers."""
    n = 0
    if set(fv.sources) & set(profile.key_sources):
        n += 1
    if set(fv.title_words) & set(profile.key_title_words):
        n += 1
    if set(fv.authors) & set(profile.key_authors):
        n += 1
    if set(fv.references) & set(profile.key_references):
        n += 1
    return n
