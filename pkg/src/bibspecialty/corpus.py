"""Bibliographic record types and whole-corpus operations."""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from .errors import DuplicateId, InvalidPeriod, MalformedRecord

YEAR_MIN = 1500
YEAR_MAX = 2200


@dataclass(frozen=True)
class Author:
    name: str
    affiliation: str | None = None


@dataclass(frozen=True)
class Publication:
    id: str
    title: str
    source: str
    year: int
    authors: tuple[Author, ...] = ()
    references: tuple[str, ...] = ()

    @property
    def incomplete(self) -> bool:
        """True when the record lacks authors or references."""
        return not self.authors or not self.references


def check_year(year: object, index: int) -> int:
    if isinstance(year, bool) or not isinstance(year, int):
        raise MalformedRecord(index, f"year {year!r} is not an integer")
    if not YEAR_MIN <= year <= YEAR_MAX:
        raise MalformedRecord(index, f"year {year} outside [{YEAR_MIN}, {YEAR_MAX}]")
    return year


@dataclass(frozen=True)
class Corpus:
    """Immutable id -> Publication mapping, iterated in ascending id order."""

    publications: Mapping[str, Publication]
    provenance: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        ordered = {pid: self.publications[pid] for pid in sorted(self.publications)}
        object.__setattr__(self, "publications", MappingProxyType(ordered))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Corpus):
            return NotImplemented
        return dict(self.publications) == dict(other.publications)

    def __hash__(self) -> int:
        return hash(tuple(self.publications.items()))

    @classmethod
    def from_publications(cls, pubs: Iterable[Publication], provenance: str = "") -> "Corpus":
        table: dict[str, Publication] = {}
        for pub in pubs:
            if pub.id in table:
                raise DuplicateId(pub.id)
            table[pub.id] = pub
        return cls(table, provenance)

    def __iter__(self) -> Iterator[Publication]:
        return iter(self.publications.values())

    def __len__(self) -> int:
        return len(self.publications)

    def __contains__(self, pub_id: object) -> bool:
        return pub_id in self.publications

    def __getitem__(self, pub_id: str) -> Publication:
        return self.publications[pub_id]

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(self.publications)


def merge_corpora(corpora: Iterable[Corpus]) -> Corpus:
    """Merge several corpora; an id present in two inputs is an error."""
    corpora = list(corpora)
    pubs = [p for c in corpora for p in c]
    provenance = "; ".join(c.provenance for c in corpora if c.provenance)
    return Corpus.from_publications(pubs, provenance)


def filter_by_period(corpus: Corpus, start_year: int, end_year: int) -> Corpus:
    if start_year > end_year:
        raise InvalidPeriod(f"start year {start_year} is after end year {end_year}")
    kept = {p.id: p for p in corpus if start_year <= p.year <= end_year}
    return Corpus(kept, corpus.provenance)


@dataclass(frozen=True)
class CorpusWarning:
    pub_id: str
    message: str

    def __str__(self) -> str:
        return f"{self.pub_id}: {self.message}"


def validate_corpus(corpus: Corpus) -> list[CorpusWarning]:
    """Lint a corpus: one warning per incomplete record."""
    warnings = []
    for pub in corpus:
        missing = []
        if not pub.authors:
            missing.append("authors")
        if not pub.references:
            missing.append("references")
        if missing:
            warnings.append(CorpusWarning(pub.id, "empty " + " and ".join(missing)))
    return warnings
