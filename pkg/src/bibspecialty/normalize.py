"""Canonical keys for the four data fields: source, title words, authors, references.

Every key is lowercase ASCII with single internal spaces. Diacritics are
folded to their base letters before keying.
"""

from __future__ import annotations

import logging
import re
import unicodedata
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Literal

from .corpus import Publication
from .errors import EmptyAfterNormalization

logger = logging.getLogger(__name__)

Field = Literal["source", "title_word", "author", "reference"]
FIELDS: tuple[Field, ...] = ("source", "title_word", "author", "reference")

# NFKD leaves these letters intact
_EXTRA_FOLDS = str.maketrans({
    "ß": "ss", "ø": "o", "Ø": "O", "ł": "l", "Ł": "L", "đ": "d", "Đ": "D",
    "æ": "ae", "Æ": "AE", "œ": "oe", "Œ": "OE", "þ": "th", "Þ": "Th", "ı": "i",
})
_NON_ALNUM = re.compile(r"[^a-z0-9]+")
_YEAR = re.compile(r"(?<!\d)(\d{4})(?!\d)")
_CANONICAL_AUTHOR = re.compile(r"^[a-z0-9]+(?: [a-z0-9]+)*,(?: [a-z0-9]+)?$")


def fold_ascii(text: str) -> str:
    text = unicodedata.normalize("NFKD", text.translate(_EXTRA_FOLDS))
    return text.encode("ascii", "ignore").decode("ascii")


def canonical_text(raw: str) -> str:
    """Lowercase, fold diacritics, turn punctuation into spaces, collapse runs."""
    return " ".join(_NON_ALNUM.split(fold_ascii(raw).lower())).strip()


def normalize_source(raw: str) -> str:
    key = canonical_text(raw)
    if not key:
        raise EmptyAfterNormalization(f"source {raw!r} is empty after normalization")
    return key


def normalize_affiliation(raw: str) -> str:
    """Institution strings use the same canonical form as sources; may be empty."""
    return canonical_text(raw)


@dataclass(frozen=True)
class StopWordList:
    words: frozenset[str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "words", frozenset(self.words))
        bad = sorted(w for w in self.words if not w or any(c.isspace() for c in w) or w != w.lower())
        if bad:
            raise ValueError(f"stop words must be lowercase single tokens: {bad[:5]}")

    def __contains__(self, word: object) -> bool:
        return word in self.words

    def __len__(self) -> int:
        return len(self.words)

    @classmethod
    def from_lines(cls, lines: Iterable[str]) -> "StopWordList":
        words = set()
        for line in lines:
            line = line.split("#", 1)[0].strip()
            if line:
                words.add(line)
        return cls(frozenset(words))

    @classmethod
    def from_file(cls, path: str | Path) -> "StopWordList":
        return cls.from_lines(Path(path).read_text(encoding="utf-8").splitlines())


@lru_cache(maxsize=1)
def default_stopwords() -> StopWordList:
    text = resources.files("bibspecialty").joinpath("data/stopwords_en.txt").read_text(encoding="utf-8")
    return StopWordList.from_lines(text.splitlines())


def tokenize_title(raw: str, stop: StopWordList) -> set[str]:
    tokens = _NON_ALNUM.split(fold_ascii(raw).lower())
    return {t for t in tokens if len(t) >= 2 and not t.isdigit() and t not in stop}


def _initials(given: str) -> str:
    out = []
    for token in re.split(r"[\s.\-]+", given):
        token = re.sub(r"[^A-Za-z0-9]", "", token)
        if not token:
            continue
        # "DJ" in "Price, DJ" is a block of initials, not a given name
        if token.isalpha() and token.isupper() and len(token) <= 3:
            out.append(token)
        else:
            out.append(token[0])
    return "".join(out).lower()


def _surname(raw: str) -> str:
    # apostrophes join (O'Brien), other punctuation separates (Muller-Ludenscheidt)
    return " ".join(_NON_ALNUM.split(re.sub(r"['’`]", "", raw.lower()))).strip()


def normalize_author(raw: str) -> str:
    """Canonical ``surname, initials`` key.

    With a comma the surname is everything before it; without one it is the
    last word. Initials are the first letters of the remaining
    tokens (an all-caps token of up to three letters counts as a run of
    initials). A name with no given part keys to the bare surname, with a
    trailing comma when the surname has several words. Strings already in
    canonical form are returned unchanged.
    """
    text = fold_ascii(raw).strip()
    collapsed = " ".join(text.split())
    if _CANONICAL_AUTHOR.match(collapsed):
        return collapsed
    if "," in text:
        surname_part, _, given = text.partition(",")
    else:
        tokens = [t for t in re.split(r"[^A-Za-z0-9]+", re.sub(r"['’`]", "", text)) if t]
        surname_part = tokens[-1] if tokens else ""
        given = " ".join(tokens[:-1])
    surname = _surname(surname_part)
    if not surname:
        raise EmptyAfterNormalization(f"author {raw!r} has no surname")
    initials = _initials(given)
    if initials:
        return f"{surname}, {initials}"
    # keep the comma so a multi-word surname is not re-read as given names
    return f"{surname}," if " " in surname else surname


def cited_author_key(segment: str) -> str:
    """Author key for the first segment of a cited reference ("Bradford SC")."""
    tokens = fold_ascii(segment).replace(".", " ").split()
    if len(tokens) >= 2:
        j = len(tokens)
        while j > 1 and tokens[j - 1].isalpha() and tokens[j - 1].isupper() and len(tokens[j - 1]) <= 3:
            j -= 1
        if j < len(tokens):
            surname = _surname(" ".join(tokens[:j]))
            if surname:
                return f"{surname}, {''.join(tokens[j:]).lower()}"
    if not tokens:
        return ""
    return normalize_author(segment)


def _reference_parts(text: str) -> tuple[str, str, str]:
    if text.count("|") == 2:
        author, year, source = (part.strip() for part in text.split("|"))
        author = normalize_author(author) if canonical_text(author) else ""
        year = year if _YEAR.fullmatch(year) else ""
        return author, year, canonical_text(source)

    segments = [s.strip() for s in text.split(",")]
    year, year_at = "", None
    for i, seg in enumerate(segments):
        m = _YEAR.search(seg)
        if m and (i > 0 or _YEAR.fullmatch(seg)):
            year, year_at = m.group(1), i
            break
    if year_at == 0:
        author_seg = ""
    else:
        author_seg = segments[0]
    if year_at is not None:
        source_seg = segments[year_at + 1] if year_at + 1 < len(segments) else ""
    else:
        source_seg = segments[1] if len(segments) > 1 else ""
    author = cited_author_key(author_seg) if canonical_text(author_seg) else ""
    return author, year, canonical_text(source_seg)


def normalize_reference(raw: str) -> str:
    """Key a cited-reference string as ``firstauthor|year|source``.

    Volume and page segments are ignored, so variants of the same citation
    that differ only there collapse to one key.
    """
    author, year, source = _reference_parts(fold_ascii(raw).strip())
    if not (author or year or source):
        raise EmptyAfterNormalization(f"reference {raw!r} has no usable component")
    return f"{author}|{year}|{source}"


def publication_ref_key(pub: Publication) -> str:
    """The key under which other records would cite ``pub``."""
    author = ""
    if pub.authors:
        try:
            author = normalize_author(pub.authors[0].name)
        except EmptyAfterNormalization:
            pass
    return f"{author}|{pub.year}|{canonical_text(pub.source)}"


@dataclass(frozen=True)
class FieldValues:
    sources: frozenset[str] = frozenset()
    title_words: frozenset[str] = frozenset()
    authors: frozenset[str] = frozenset()
    references: frozenset[str] = frozenset()

    def get(self, field: Field) -> frozenset[str]:
        return getattr(self, _ATTR[field])


_ATTR: dict[str, str] = {
    "source": "sources",
    "title_word": "title_words",
    "author": "authors",
    "reference": "references",
}


def _keys(pub_id: str, what: str, raws: Iterable[str], fn) -> frozenset[str]:
    out = set()
    for raw in raws:
        try:
            out.add(fn(raw))
        except EmptyAfterNormalization:
            logger.warning("%s: dropped %s %r (empty after normalization)", pub_id, what, raw)
    return frozenset(out)


def extract_field_values(p: Publication, stop: StopWordList) -> FieldValues:
    return FieldValues(
        sources=_keys(p.id, "source", [p.source], normalize_source),
        title_words=frozenset(tokenize_title(p.title, stop)),
        authors=_keys(p.id, "author", [a.name for a in p.authors], normalize_author),
        references=_keys(p.id, "reference", p.references, normalize_reference),
    )
