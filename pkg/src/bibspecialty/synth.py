"""Synthetic corpora with Lotka author productivity, Zipf title words and skewed sources.

All randomness comes from numpy's PCG64 bit generator seeded with
``SynthParams.rng_seed``, so a given parameter set always yields the same
corpus bytes.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass, fields
from functools import lru_cache
from typing import Any, Mapping

import numpy as np

from .corpus import Author, Corpus, Publication, YEAR_MAX, YEAR_MIN
from .errors import InfeasibleParams
from .normalize import default_stopwords

_CONSONANTS = "bdgklmnprstvz"
_VOWELS = "aeiou"
_SYLLABLES = [c + v for c in _CONSONANTS for v in _VOWELS]


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


@lru_cache(maxsize=16)
def _power_law_cdf(exponent: float, support_max: int) -> np.ndarray:
    k = np.arange(1, support_max + 1, dtype=np.float64)
    cdf = np.cumsum(k ** -exponent)
    cdf /= cdf[-1]
    cdf[-1] = 1.0
    cdf.setflags(write=False)
    return cdf


def sample_power_law(rng: np.random.Generator, exponent: float, support_max: int) -> int:
    """Draw k in [1, support_max] with P(k) proportional to k**-exponent (inverse CDF)."""
    if exponent <= 0 or support_max < 1:
        raise ValueError("need exponent > 0 and support_max >= 1")
    cdf = _power_law_cdf(float(exponent), int(support_max))
    return int(np.searchsorted(cdf, rng.random(), side="right")) + 1


def sample_power_law_many(rng: np.random.Generator, exponent: float, support_max: int,
                          size: int) -> np.ndarray:
    if exponent <= 0 or support_max < 1:
        raise ValueError("need exponent > 0 and support_max >= 1")
    cdf = _power_law_cdf(float(exponent), int(support_max))
    return np.searchsorted(cdf, rng.random(size), side="right") + 1


@dataclass(frozen=True)
class SynthParams:
    n_publications: int = 1000
    n_authors: int = 5000
    lotka_exponent: float = 2.0
    zipf_exponent: float = 1.0
    vocabulary_size: int = 2000
    n_sources: int = 100
    source_skew: float = 1.0
    refs_per_pub: tuple[int, int] = (0, 12)
    authors_per_pub: tuple[int, int] = (1, 4)
    title_length: tuple[int, int] = (4, 10)
    year_range: tuple[int, int] = (2010, 2017)
    rng_seed: int = 0

    def __post_init__(self) -> None:
        for name in ("n_publications", "n_authors", "vocabulary_size", "n_sources"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        for name in ("lotka_exponent", "zipf_exponent", "source_skew"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0")
        for name in ("refs_per_pub", "authors_per_pub", "title_length", "year_range"):
            lo, hi = getattr(self, name)
            object.__setattr__(self, name, (int(lo), int(hi)))
            if lo > hi:
                raise ValueError(f"{name} range is empty")
        if self.refs_per_pub[0] < 0:
            raise ValueError("refs_per_pub must be non-negative")
        if self.authors_per_pub[0] < 1:
            raise ValueError("authors_per_pub must start at 1 or more")
        if self.title_length[0] < 1:
            raise ValueError("title_length must start at 1 or more")
        lo, hi = self.year_range
        if lo < YEAR_MIN or hi > YEAR_MAX:
            raise ValueError(f"year_range must lie within [{YEAR_MIN}, {YEAR_MAX}]")
        if not 0 <= self.rng_seed < 2**64:
            raise ValueError("rng_seed must be a 64-bit unsigned integer")

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> "SynthParams":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown synth parameters: {sorted(unknown)}")
        kwargs = {k: tuple(v) if isinstance(v, list) else v for k, v in data.items()}
        return cls(**kwargs)

    def to_mapping(self) -> dict[str, Any]:
        return {k: list(v) if isinstance(v, tuple) else v for k, v in asdict(self).items()}


def _pseudo_words(count: int, min_syllables: int = 2, skip: frozenset[str] = frozenset()) -> list[str]:
    """Distinct letters-only words, enumerated in a fixed order."""
    n_syl = max(min_syllables, math.ceil(math.log(count + len(skip) + 1, len(_SYLLABLES))))
    out: list[str] = []
    i = 0
    while len(out) < count:
        digits, j = [], i
        for _ in range(n_syl):
            j, r = divmod(j, len(_SYLLABLES))
            digits.append(_SYLLABLES[r])
        word = "".join(digits)
        if word not in skip:
            out.append(word)
        i += 1
    return out


def _deal_authors(slots: np.ndarray, sizes: np.ndarray) -> list[list[int]]:
    """Cut the shuffled slot list into per-publication author lists without repeats."""
    slots = slots.tolist()
    teams: list[list[int]] = []
    pos = 0
    for size in sizes.tolist():
        team: list[int] = []
        end = min(pos + size, len(slots))
        while pos < end:
            a = slots[pos]
            if a in team:
                for j in range(pos + 1, min(len(slots), pos + 64)):
                    if slots[j] not in team:
                        slots[pos], slots[j] = slots[j], slots[pos]
                        a = slots[pos]
                        break
            if a not in team:
                team.append(a)
            pos += 1
        teams.append(team)
    return teams


def generate_corpus(params: SynthParams) -> Corpus:
    """Generate a corpus; identical params give an identical corpus.

    Authors get a Lotka-distributed number of papers (inverse-CDF draws, at
    most ``n_publications`` each) and those author slots are shuffled across
    publications. References cite strictly earlier publications with
    probability proportional to citations already received plus one.
    """
    p = params
    rng = make_rng(p.rng_seed)
    n = p.n_publications

    years = np.sort(rng.integers(p.year_range[0], p.year_range[1] + 1, size=n))
    team_sizes = rng.integers(p.authors_per_pub[0], p.authors_per_pub[1] + 1, size=n)
    demand = int(team_sizes.sum())

    productivity = sample_power_law_many(rng, p.lotka_exponent, n, p.n_authors)
    cum = np.cumsum(productivity)
    if cum[-1] >= demand:
        used = int(np.searchsorted(cum, demand)) + 1
        productivity = productivity[:used].copy()
        productivity[-1] -= int(cum[used - 1]) - demand
        slots = np.repeat(np.arange(used), productivity)
    else:
        warnings.warn(
            f"{p.n_authors} authors supply {int(cum[-1])} of {demand} author slots; "
            "remaining slots drawn in proportion to productivity",
            InfeasibleParams,
            stacklevel=2,
        )
        extra = rng.choice(p.n_authors, size=demand - int(cum[-1]), p=productivity / cum[-1])
        slots = np.concatenate([np.repeat(np.arange(p.n_authors), productivity), extra])
    teams = _deal_authors(rng.permutation(slots), team_sizes)

    n_people = p.n_authors
    stop = default_stopwords().words
    vocab = _pseudo_words(p.vocabulary_size, 2, stop)
    surnames = _pseudo_words(n_people, 3, stop)
    venues = _pseudo_words(p.n_sources, 2, stop)
    n_inst = max(1, int(math.sqrt(n_people)))
    institutions = _pseudo_words(n_inst, 2, stop)
    affiliation_of = rng.integers(0, n_inst, size=n_people)
    initials = [chr(ord("A") + int(i)) for i in rng.integers(0, 26, size=n_people)]

    source_idx = sample_power_law_many(rng, p.source_skew, p.n_sources, n) - 1
    title_lengths = rng.integers(p.title_length[0], p.title_length[1] + 1, size=n)
    ref_counts = rng.integers(p.refs_per_pub[0], p.refs_per_pub[1] + 1, size=n)

    width = len(str(n))
    weights = np.ones(n, dtype=np.float64)
    clamped = 0
    pubs = []
    cite_strings: list[str] = []
    for i in range(n):
        words = sample_power_law_many(rng, p.zipf_exponent, p.vocabulary_size, int(title_lengths[i])) - 1
        title = " ".join(vocab[w] for w in words).capitalize()
        source = "Journal of " + venues[source_idx[i]].capitalize()
        team = teams[i]
        authors = tuple(
            Author(f"{surnames[a].capitalize()}, {initials[a]}.",
                   f"University of {institutions[affiliation_of[a]].capitalize()}")
            for a in team
        )
        want = int(ref_counts[i])
        if want > i:
            clamped += 1
            want = i
        refs: tuple[str, ...] = ()
        if want:
            w = weights[:i]
            targets = np.sort(rng.choice(i, size=want, replace=False, p=w / w.sum()))
            weights[targets] += 1.0
            refs = tuple(cite_strings[t] for t in targets.tolist())
        year = int(years[i])
        pubs.append(Publication(f"S{i:0{width}d}", title, source, year, authors, refs))
        first = team[0]
        cite_strings.append(
            f"{surnames[first].capitalize()} {initials[first]}, {year}, {source.upper()}, "
            f"V{1 + i % 60}, P{1 + (7 * i) % 400}"
        )
    if clamped and p.refs_per_pub[0] > 0:
        warnings.warn(
            f"refs_per_pub {p.refs_per_pub} exceeds the earlier publications available to "
            f"{clamped} record(s); reference counts were clamped",
            InfeasibleParams,
            stacklevel=2,
        )
    return Corpus.from_publications(pubs, provenance=f"synth seed={p.rng_seed}")
