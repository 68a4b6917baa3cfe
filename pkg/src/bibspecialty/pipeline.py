"""Seed record, key-value selection and specialty approximation."""

from __future__ import annotations

import math
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .corpus import Corpus
from .errors import EmptyAfterNormalization, EmptyRecord, UnknownId
from .normalize import (
    FIELDS,
    Field,
    FieldValues,
    StopWordList,
    default_stopwords,
    extract_field_values,
    normalize_author,
    normalize_reference,
    publication_ref_key,
)

DEFAULT_THRESHOLD = 0.5
DEFAULT_MIN_FIELDS = 3

FieldValueIndex = Mapping[str, FieldValues]


@dataclass(frozen=True)
class PublicationRecord:
    ids: frozenset[str]
    owner_label: str = ""

    def __len__(self) -> int:
        return len(self.ids)


@dataclass(frozen=True)
class SeedRecord:
    ids: frozenset[str]
    origin: PublicationRecord
    resolved_references: int = 0
    unresolved_references: int = 0

    def __len__(self) -> int:
        return len(self.ids)


@dataclass(frozen=True)
class FieldFrequencyTable:
    field: Field
    counts: Mapping[str, int]
    # seed publication id -> its values for this field; needed for coverage
    pub_values: Mapping[str, frozenset[str]] = field(repr=False)

    def ranked(self) -> list[tuple[str, int]]:
        """Values by descending count, ties by ascending key."""
        return sorted(self.counts.items(), key=lambda kv: (-kv[1], kv[0]))


@dataclass(frozen=True)
class KeyValueProfile:
    key_sources: tuple[str, ...]
    key_title_words: tuple[str, ...]
    key_authors: tuple[str, ...]
    key_references: tuple[str, ...]
    threshold: float
    seed_size: int
    counts: Mapping[str, Mapping[str, int]] = field(default_factory=dict, compare=False, repr=False)
    coverage: Mapping[str, int] = field(default_factory=dict, compare=False, repr=False)

    def ordered(self, fld: Field) -> tuple[str, ...]:
        return getattr(self, _PROFILE_ATTR[fld])

    def keys(self, fld: Field) -> frozenset[str]:
        return frozenset(self.ordered(fld))

    @property
    def target(self) -> int:
        return coverage_target(self.threshold, self.seed_size)


_PROFILE_ATTR = {
    "source": "key_sources",
    "title_word": "key_title_words",
    "author": "key_authors",
    "reference": "key_references",
}


@dataclass(frozen=True)
class SpecialtyApproximation:
    ids: frozenset[str]
    profile: KeyValueProfile
    min_fields: int = DEFAULT_MIN_FIELDS

    def __len__(self) -> int:
        return len(self.ids)

    def sorted_ids(self) -> list[str]:
        return sorted(self.ids)


def field_values_index(corpus: Corpus, stop: StopWordList | None = None,
                       ids: Iterable[str] | None = None) -> dict[str, FieldValues]:
    stop = stop or default_stopwords()
    chosen = corpus.ids if ids is None else ids
    return {pid: extract_field_values(corpus[pid], stop) for pid in chosen}


def build_publication_record(corpus: Corpus, *, ids: Sequence[str] | None = None,
                             author: str | None = None, owner_label: str = "") -> PublicationRecord:
    """Select the applicant's publications by explicit ids or by author key."""
    if (ids is None) == (author is None):
        raise ValueError("give exactly one of ids or author")
    if ids is not None:
        for pid in ids:
            if pid not in corpus:
                raise UnknownId(pid)
        chosen = frozenset(ids)
    else:
        key = normalize_author(author)
        chosen = frozenset(
            p.id for p in corpus
            if key in {_safe_author(a.name) for a in p.authors}
        )
    if not chosen:
        raise EmptyRecord(f"publication record for {owner_label or author or ids!r} is empty")
    return PublicationRecord(chosen, owner_label)


def _safe_author(name: str) -> str | None:
    try:
        return normalize_author(name)
    except EmptyAfterNormalization:
        return None


def build_seed_record(pr: PublicationRecord, corpus: Corpus) -> SeedRecord:
    """Enlarge the record with the corpus publications it cites directly (one hop)."""
    for pid in pr.ids:
        if pid not in corpus:
            raise UnknownId(pid)
    by_key: dict[str, list[str]] = defaultdict(list)
    for pub in corpus:
        by_key[publication_ref_key(pub)].append(pub.id)

    ids = set(pr.ids)
    cited: set[str] = set()
    unresolved = 0
    for pid in pr.ids:
        for raw in corpus[pid].references:
            try:
                cited.add(normalize_reference(raw))
            except EmptyAfterNormalization:
                unresolved += 1
    resolved = 0
    for key in cited:
        hits = by_key.get(key)
        if hits:
            resolved += 1
            ids.update(hits)
        else:
            unresolved += 1
    return SeedRecord(frozenset(ids), pr, resolved, unresolved)


def field_frequency_table(seed: SeedRecord, corpus: Corpus, field: Field,
                          stop: StopWordList | None = None,
                          values: FieldValueIndex | None = None) -> FieldFrequencyTable:
    if field not in FIELDS:
        raise ValueError(f"unknown field {field!r}")
    if values is None:
        values = field_values_index(corpus, stop, seed.ids)
    pub_values = {pid: values[pid].get(field) for pid in sorted(seed.ids)}
    counts: dict[str, int] = defaultdict(int)
    for vals in pub_values.values():
        for v in vals:
            counts[v] += 1
    return FieldFrequencyTable(field, MappingProxyType(dict(counts)), MappingProxyType(pub_values))


def coverage_target(threshold: float, seed_size: int) -> int:
    """ceil(threshold * seed_size), computed on the decimal value of threshold."""
    if not 0 <= threshold <= 1:
        raise ValueError(f"threshold {threshold} outside [0, 1]")
    return math.ceil(Fraction(str(threshold)) * seed_size)


def coverage(keys: Iterable[str], pub_values: Mapping[str, frozenset[str]]) -> int:
    """Number of publications containing at least one of ``keys``."""
    keys = set(keys)
    return sum(1 for vals in pub_values.values() if vals & keys)


def select_key_values(table: FieldFrequencyTable, seed: SeedRecord, threshold: float) -> tuple[str, ...]:
    """Greedy prefix of the frequency ranking that covers the target share of the seed.

    Returned in selection order. If every value is taken without reaching the
    target (publications with an empty field cannot be covered) the whole
    ranking is returned.
    """
    target = coverage_target(threshold, len(seed.ids))
    holders: dict[str, list[str]] = defaultdict(list)
    for pid, vals in table.pub_values.items():
        for v in vals:
            holders[v].append(pid)
    covered: set[str] = set()
    selected: list[str] = []
    for value, _ in table.ranked():
        if len(covered) >= target:
            break
        selected.append(value)
        covered.update(holders[value])
    return tuple(selected)


def build_profile(seed: SeedRecord, corpus: Corpus, threshold: float = DEFAULT_THRESHOLD,
                  stop: StopWordList | None = None,
                  values: FieldValueIndex | None = None) -> KeyValueProfile:
    if values is None:
        values = field_values_index(corpus, stop, seed.ids)
    chosen: dict[str, tuple[str, ...]] = {}
    counts: dict[str, Mapping[str, int]] = {}
    covered: dict[str, int] = {}
    for fld in FIELDS:
        table = field_frequency_table(seed, corpus, fld, values=values)
        keys = select_key_values(table, seed, threshold)
        chosen[fld] = keys
        counts[fld] = MappingProxyType({k: table.counts[k] for k in keys})
        covered[fld] = coverage(keys, table.pub_values)
    return KeyValueProfile(
        key_sources=chosen["source"],
        key_title_words=chosen["title_word"],
        key_authors=chosen["author"],
        key_references=chosen["reference"],
        threshold=threshold,
        seed_size=len(seed.ids),
        counts=MappingProxyType(counts),
        coverage=MappingProxyType(covered),
    )


def match_count(fv: FieldValues, profile: KeyValueProfile) -> int:
    """How many of the four fields share at least one value with the profile."""
    return sum(1 for fld in FIELDS if fv.get(fld) & profile.keys(fld))


def _scan(corpus: Corpus, ids: Sequence[str], profile: KeyValueProfile, min_fields: int,
          stop: StopWordList, values: FieldValueIndex | None) -> list[str]:
    hits = []
    for pid in ids:
        fv = values[pid] if values is not None else extract_field_values(corpus[pid], stop)
        if match_count(fv, profile) >= min_fields:
            hits.append(pid)
    return hits


def build_specialty_approximation(corpus: Corpus, profile: KeyValueProfile,
                                  min_fields: int = DEFAULT_MIN_FIELDS,
                                  stop: StopWordList | None = None,
                                  values: FieldValueIndex | None = None,
                                  workers: int = 1) -> SpecialtyApproximation:
    """All corpus publications matching the profile on at least ``min_fields`` fields.

    ``workers > 1`` splits the scan over a thread pool; the result does not
    depend on it.
    """
    if not 1 <= min_fields <= 4:
        raise ValueError(f"min_fields {min_fields} outside [1, 4]")
    stop = stop or default_stopwords()
    ids = list(corpus.ids)
    if workers <= 1 or len(ids) < 2:
        hits = _scan(corpus, ids, profile, min_fields, stop, values)
    else:
        size = math.ceil(len(ids) / workers)
        chunks = [ids[i:i + size] for i in range(0, len(ids), size)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(lambda c: _scan(corpus, c, profile, min_fields, stop, values), chunks)
            hits = [pid for part in parts for pid in part]
    return SpecialtyApproximation(frozenset(hits), profile, min_fields)
