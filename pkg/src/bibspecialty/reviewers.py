"""Reviewer candidates from a specialty approximation, with conflict-of-interest exclusions."""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field, replace
from typing import Any, Iterable, Mapping, Sequence

from .corpus import Corpus
from .errors import EmptyAfterNormalization
from .normalize import normalize_affiliation, normalize_author
from .pipeline import FieldValueIndex, PublicationRecord, SpecialtyApproximation

COAUTHOR = "COAUTHOR"
SAME_AFFILIATION = "SAME_AFFILIATION"
LOW_GRADE = "LOW_GRADE"
APPLICANT_SUGGESTED = "APPLICANT_SUGGESTED"
KNOWN_COLLABORATOR = "KNOWN_COLLABORATOR"
IS_APPLICANT = "IS_APPLICANT"
REASONS = (COAUTHOR, SAME_AFFILIATION, LOW_GRADE, APPLICANT_SUGGESTED, KNOWN_COLLABORATOR, IS_APPLICANT)

DEFAULT_N_MIN = 5
DEFAULT_N_MAX = 7


@dataclass(frozen=True)
class ExclusionData:
    applicant_authors: frozenset[str] = frozenset()
    coauthors: frozenset[str] = frozenset()
    applicant_affiliations: frozenset[str] = frozenset()
    applicant_suggested: frozenset[str] = frozenset()
    known_collaborators: frozenset[str] = frozenset()
    grades: Mapping[str, int] = field(default_factory=dict)
    applicant_grade: int | None = None

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> "ExclusionData":
        """Build from a loaded YAML/JSON document. Names and institutions are normalized."""
        unknown = set(data) - {f for f in cls.__dataclass_fields__} - {"overlap_lists"}
        if unknown:
            raise ValueError(f"unknown exclusion keys: {sorted(unknown)}")

        def names(key: str) -> frozenset[str]:
            return frozenset(normalize_author(n) for n in data.get(key) or [])

        grades = {normalize_author(k): int(v) for k, v in (data.get("grades") or {}).items()}
        grade = data.get("applicant_grade")
        return cls(
            applicant_authors=names("applicant_authors"),
            coauthors=names("coauthors"),
            applicant_affiliations=frozenset(
                a for a in (normalize_affiliation(x) for x in data.get("applicant_affiliations") or []) if a
            ),
            applicant_suggested=names("applicant_suggested"),
            known_collaborators=names("known_collaborators"),
            grades=grades,
            applicant_grade=None if grade is None else int(grade),
        )


def _author_keys(names: Iterable[str]) -> set[str]:
    out = set()
    for n in names:
        try:
            out.add(normalize_author(n))
        except EmptyAfterNormalization:
            pass
    return out


def derive_exclusions(ex: ExclusionData, pr: PublicationRecord, corpus: Corpus) -> ExclusionData:
    """Add co-authors and the applicant's own affiliations taken from the publication record.

    Co-authors come from the publication record only: the seed record also
    holds cited works whose authors never worked with the applicant.
    """
    coauthors: set[str] = set()
    own_affs: set[str] = set()
    for pid in sorted(pr.ids):
        for author in corpus[pid].authors:
            keys = _author_keys([author.name])
            if keys & ex.applicant_authors:
                if author.affiliation and normalize_affiliation(author.affiliation):
                    own_affs.add(normalize_affiliation(author.affiliation))
            else:
                coauthors |= keys
    return replace(
        ex,
        coauthors=ex.coauthors | coauthors,
        applicant_affiliations=ex.applicant_affiliations | own_affs,
    )


def author_affiliations(corpus: Corpus) -> dict[str, frozenset[str]]:
    """Every normalized institution each author key appears with anywhere in the corpus."""
    found: dict[str, set[str]] = defaultdict(set)
    for pub in corpus:
        for a in pub.authors:
            if not a.affiliation:
                continue
            aff = normalize_affiliation(a.affiliation)
            for key in _author_keys([a.name]):
                if aff:
                    found[key].add(aff)
    return {k: frozenset(v) for k, v in found.items()}


def rank_authors(sa: SpecialtyApproximation, corpus: Corpus,
                 values: FieldValueIndex | None = None) -> list[tuple[str, int]]:
    """Authors of the approximation by publication count, ties by key."""
    counts: Counter[str] = Counter()
    for pid in sa.ids:
        if values is not None:
            counts.update(values[pid].authors)
        else:
            counts.update(_author_keys(a.name for a in corpus[pid].authors))
    return sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))


@dataclass(frozen=True)
class ReviewerCandidate:
    author: str
    pub_count: int
    rank: int
    exclusions: frozenset[str] = frozenset()

    @property
    def excluded(self) -> bool:
        return bool(self.exclusions)


def _reasons(author: str, ex: ExclusionData, affiliations: Mapping[str, frozenset[str]]) -> frozenset[str]:
    reasons = set()
    if author in ex.coauthors:
        reasons.add(COAUTHOR)
    if affiliations.get(author, frozenset()) & ex.applicant_affiliations:
        reasons.add(SAME_AFFILIATION)
    grade = ex.grades.get(author)
    if grade is not None and ex.applicant_grade is not None and grade < ex.applicant_grade:
        reasons.add(LOW_GRADE)
    if author in ex.applicant_suggested:
        reasons.add(APPLICANT_SUGGESTED)
    if author in ex.known_collaborators:
        reasons.add(KNOWN_COLLABORATOR)
    if author in ex.applicant_authors:
        reasons.add(IS_APPLICANT)
    return frozenset(reasons)


def apply_exclusions(ranked: Sequence[tuple[str, int]], ex: ExclusionData,
                     affiliations: Mapping[str, frozenset[str]] | None = None) -> list[ReviewerCandidate]:
    """Annotate each ranked author with every exclusion reason that applies.

    Nothing is dropped or reordered. ``affiliations`` maps author keys to
    their normalized institutions (see :func:`author_affiliations`); without
    it no candidate can be flagged SAME_AFFILIATION.
    """
    affiliations = affiliations or {}
    return [
        ReviewerCandidate(author, count, rank, _reasons(author, ex, affiliations))
        for rank, (author, count) in enumerate(ranked, start=1)
    ]


@dataclass(frozen=True)
class SuggestionReport:
    selected: tuple[ReviewerCandidate, ...]
    candidates: tuple[ReviewerCandidate, ...]
    n_min: int
    n_max: int
    overlaps: Mapping[str, tuple[int, int]] = field(default_factory=dict)

    @property
    def shortfall(self) -> bool:
        return len(self.selected) < self.n_min


def suggest_reviewers(candidates: Sequence[ReviewerCandidate], n_min: int = DEFAULT_N_MIN,
                      n_max: int = DEFAULT_N_MAX) -> SuggestionReport:
    if not 1 <= n_min <= n_max:
        raise ValueError(f"need 1 <= n_min <= n_max, got {n_min}, {n_max}")
    eligible = [c for c in candidates if not c.excluded]
    return SuggestionReport(tuple(eligible[:n_max]), tuple(candidates), n_min, n_max)


def approximation_authors(sa: SpecialtyApproximation, corpus: Corpus) -> set[str]:
    return {a for pid in sa.ids for a in _author_keys(x.name for x in corpus[pid].authors)}


def overlap_report(names: Iterable[str], sa: SpecialtyApproximation, corpus: Corpus) -> tuple[int, int]:
    """(how many names, how many of them author something in the approximation)."""
    names = set(names)
    return len(names), len(names & approximation_authors(sa, corpus))


def format_overlap(total: int, in_sa: int) -> str:
    return f"{total}({in_sa})"
