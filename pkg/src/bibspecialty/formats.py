"""Reading and writing corpus files.

Two formats are supported:

``jsonl``
    One JSON object per line with keys ``id``, ``title``, ``source``, ``year``
    (required) and ``authors`` (list of ``{"name", "affiliation"}`` objects) and
    ``references`` (list of cited-reference strings). Unknown keys are ignored.

``tagged``
    A Web-of-Science style plain-text export. Each line starts with a two
    character tag followed by a space; lines starting with whitespace continue
    the previous tag. Recognised tags:

    ====  ==================================================================
    FN    file name header (ignored)
    VR    version header (ignored)
    PT    begins a record (publication type, ignored)
    UT    record id
    TI    title; continuation lines are joined with a space
    SO    source; continuation lines are joined with a space
    AU    authors, one per line
    C1    affiliations, one per line, ``[Name1; Name2] Institution``; a line
          without brackets applies to the author at the same position
    CR    cited references, one per line
    PY    publication year
    ER    ends a record
    EF    end of file (ignored)
    ====  ==================================================================

    Any other tag is skipped together with its continuation lines.
"""

from __future__ import annotations

import json
import re
from typing import Any, Literal

from .corpus import Author, Corpus, Publication, check_year
from .errors import MalformedRecord, MissingField

Format = Literal["jsonl", "tagged"]
FORMATS: tuple[str, ...] = ("jsonl", "tagged")

_TAG_LINE = re.compile(r"^([A-Z][A-Z0-9])(?: (.*))?$")
_C1_BRACKET = re.compile(r"^\[([^\]]*)\]\s*(.*)$")
_JOINED_TAGS = {"TI", "SO"}
_LIST_TAGS = {"AU", "C1", "CR"}


def parse_corpus(content: bytes | str, format: str, provenance: str = "") -> Corpus:
    if isinstance(content, bytes):
        try:
            content = content.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedRecord(0, f"content is not UTF-8: {exc}") from exc
    content = content.lstrip("\ufeff")
    if format == "jsonl":
        pubs = _parse_jsonl(content)
    elif format == "tagged":
        pubs = _parse_tagged(content)
    else:
        raise ValueError(f"unsupported corpus format {format!r}")
    return Corpus.from_publications(pubs, provenance)


def serialize_corpus(corpus: Corpus, format: str) -> bytes:
    if format == "jsonl":
        text = "".join(json.dumps(_pub_to_json(p), ensure_ascii=False) + "\n" for p in corpus)
    elif format == "tagged":
        text = _serialize_tagged(corpus)
    else:
        raise ValueError(f"unsupported corpus format {format!r}")
    return text.encode("utf-8")


def _required_text(raw: dict, key: str, pub_id: str | None) -> str:
    value = raw.get(key)
    if value is None or (isinstance(value, str) and not value.strip()):
        raise MissingField(pub_id, key)
    if not isinstance(value, str):
        value = str(value)
    return value


def _build_publication(raw: dict, index: int) -> Publication:
    pub_id = raw.get("id")
    if pub_id is None or not str(pub_id).strip():
        raise MissingField(None, "id")
    pub_id = str(pub_id)
    title = _required_text(raw, "title", pub_id)
    source = _required_text(raw, "source", pub_id)
    if raw.get("year") is None:
        raise MissingField(pub_id, "year")
    year = check_year(raw["year"], index)
    return Publication(
        id=pub_id,
        title=title,
        source=source,
        year=year,
        authors=tuple(raw.get("authors") or ()),
        references=tuple(raw.get("references") or ()),
    )


def _json_author(item: Any, index: int) -> Author:
    if isinstance(item, str):
        return Author(item)
    if isinstance(item, dict) and isinstance(item.get("name"), str) and item["name"].strip():
        aff = item.get("affiliation")
        return Author(item["name"], aff if aff else None)
    raise MalformedRecord(index, f"bad author entry {item!r}")


def _parse_jsonl(text: str) -> list[Publication]:
    pubs = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            raw = json.loads(line)
        except json.JSONDecodeError as exc:
            raise MalformedRecord(lineno, f"invalid JSON: {exc.msg}") from exc
        if not isinstance(raw, dict):
            raise MalformedRecord(lineno, "record is not a JSON object")
        authors = raw.get("authors") or []
        refs = raw.get("references") or []
        if not isinstance(authors, list) or not isinstance(refs, list):
            raise MalformedRecord(lineno, "authors and references must be lists")
        if not all(isinstance(r, str) for r in refs):
            raise MalformedRecord(lineno, "references must be strings")
        raw = dict(raw, authors=[_json_author(a, lineno) for a in authors],
                   references=[r for r in refs if r.strip()])
        pubs.append(_build_publication(raw, lineno))
    return pubs


def _pub_to_json(pub: Publication) -> dict:
    authors = []
    for a in pub.authors:
        entry = {"name": a.name}
        if a.affiliation is not None:
            entry["affiliation"] = a.affiliation
        authors.append(entry)
    return {
        "id": pub.id,
        "title": pub.title,
        "source": pub.source,
        "year": pub.year,
        "authors": authors,
        "references": list(pub.references),
    }


def _assign_affiliations(names: list[str], c1_lines: list[str]) -> list[Author]:
    affs: list[str | None] = [None] * len(names)
    for pos, line in enumerate(c1_lines):
        m = _C1_BRACKET.match(line)
        if m is None:
            if pos < len(names) and affs[pos] is None:
                affs[pos] = line
            continue
        institution = m.group(2).strip()
        for who in (n.strip() for n in m.group(1).split(";")):
            for i, name in enumerate(names):
                if name == who and affs[i] is None:
                    affs[i] = institution or None
                    break
    return [Author(n, a) for n, a in zip(names, affs)]


def _finish_tagged(fields: dict[str, list[str]], index: int) -> Publication:
    def scalar(tag: str) -> str | None:
        lines = fields.get(tag)
        if not lines:
            return None
        sep = " " if tag in _JOINED_TAGS else ""
        return sep.join(lines).strip() or None

    pub_id = scalar("UT")
    year_text = scalar("PY")
    year: object = year_text
    if year_text is not None:
        try:
            year = int(year_text)
        except ValueError:
            raise MalformedRecord(index, f"year {year_text!r} is not an integer") from None
    raw = {
        "id": pub_id,
        "title": scalar("TI"),
        "source": scalar("SO"),
        "year": year,
        "authors": _assign_affiliations(fields.get("AU", []), fields.get("C1", [])),
        "references": fields.get("CR", []),
    }
    return _build_publication(raw, index)


def _parse_tagged(text: str) -> list[Publication]:
    pubs: list[Publication] = []
    fields: dict[str, list[str]] | None = None
    current: str | None = None
    index = 0
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.rstrip()
        if not line:
            continue
        if line[0] in " \t":
            if current is None:
                raise MalformedRecord(lineno, "continuation line outside a field")
            if fields is not None and current in fields:
                fields[current].append(line.strip())
            continue
        m = _TAG_LINE.match(line)
        if m is None:
            raise MalformedRecord(lineno, f"unrecognised line {line[:40]!r}")
        tag, value = m.group(1), (m.group(2) or "").strip()
        if tag in ("FN", "VR", "EF"):
            current = tag
            continue
        if tag == "PT":
            if fields is not None:
                raise MalformedRecord(lineno, "PT before ER of the previous record")
            fields, current, index = {}, None, index + 1
            continue
        if tag == "ER":
            if fields is None:
                raise MalformedRecord(lineno, "ER without an open record")
            pubs.append(_finish_tagged(fields, index))
            fields, current = None, None
            continue
        if fields is None:
            fields, index = {}, index + 1
        current = tag
        if tag in _LIST_TAGS or tag in _JOINED_TAGS or tag in ("UT", "PY"):
            if tag in fields and tag not in _LIST_TAGS:
                raise MalformedRecord(lineno, f"repeated tag {tag}")
            fields[tag] = [value] if value else []
    if fields is not None:
        raise MalformedRecord(index, "record not terminated by ER")
    return pubs


def _tag_block(tag: str, values: list[str]) -> list[str]:
    if not values:
        return []
    return [f"{tag} {values[0]}"] + [f"   {v}" for v in values[1:]]


def _serialize_tagged(corpus: Corpus) -> str:
    lines = ["FN bibspecialty export", "VR 1.0"]
    for pub in corpus:
        c1 = [f"[{a.name}] {a.affiliation}" for a in pub.authors if a.affiliation]
        lines.append("PT J")
        lines.append(f"UT {pub.id}")
        lines.append(f"TI {pub.title}")
        lines.append(f"SO {pub.source}")
        lines += _tag_block("AU", [a.name for a in pub.authors])
        lines += _tag_block("C1", c1)
        lines += _tag_block("CR", list(pub.references))
        lines.append(f"PY {pub.year}")
        lines.append("ER")
        lines.append("")
    lines.append("EF")
    return "\n".join(lines) + "\n"

