"""End-to-end run: corpus files in, report artifacts out."""

from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass, replace
from pathlib import Path

import yaml

from .config import RunConfig
from .corpus import Corpus, filter_by_period, merge_corpora
from .formats import parse_corpus
from .keyfigures import KeyFigures, key_figures, render_key_figures_csv
from .normalize import StopWordList, default_stopwords, normalize_author
from .pipeline import (
    KeyValueProfile,
    PublicationRecord,
    SeedRecord,
    SpecialtyApproximation,
    build_profile,
    build_publication_record,
    build_seed_record,
    build_specialty_approximation,
    field_values_index,
)
from .reports import render_id_list, render_profile, render_suggestions_csv, render_suggestions_text
from .reviewers import (
    ExclusionData,
    SuggestionReport,
    apply_exclusions,
    author_affiliations,
    derive_exclusions,
    overlap_report,
    rank_authors,
    suggest_reviewers,
)

logger = logging.getLogger(__name__)

MANIFEST = "manifest.json"


@dataclass(frozen=True)
class RunResult:
    corpus: Corpus
    record: PublicationRecord
    seed: SeedRecord
    profile: KeyValueProfile
    approximation: SpecialtyApproximation
    figures: KeyFigures
    report: SuggestionReport | None
    artifacts: dict[str, Path]


def load_corpus_files(cfg: RunConfig) -> tuple[Corpus, str]:
    """Parse and merge every corpus file; also return a checksum over their bytes."""
    digest = hashlib.sha256()
    parts = []
    for name in cfg.corpus_paths:
        path = cfg.resolve(name)
        data = path.read_bytes()
        digest.update(hashlib.sha256(data).digest())
        parts.append(parse_corpus(data, cfg.format, provenance=name))
    return merge_corpora(parts), digest.hexdigest()


def load_exclusions(path: Path) -> tuple[ExclusionData, dict[str, list[str]]]:
    data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    if not isinstance(data, dict):
        raise ValueError(f"{path}: exclusion file must be a mapping")
    extra = data.get("overlap_lists") or {}
    return ExclusionData.from_mapping(data), {str(k): list(v) for k, v in extra.items()}


def _stopwords(cfg: RunConfig) -> StopWordList:
    if cfg.stopword_path:
        return StopWordList.from_file(cfg.resolve(cfg.stopword_path))
    return default_stopwords()


def run_pipeline(cfg: RunConfig, suggest: bool | None = None) -> RunResult:
    """Run phases 1-3 and write artifacts into ``cfg.output_dir``.

    Reviewer suggestions are produced when ``suggest`` is true, or, with
    ``suggest=None``, whenever the config names an exclusion file.
    """
    stop = _stopwords(cfg)
    corpus, corpus_sha = load_corpus_files(cfg)
    if cfg.period is not None:
        corpus = filter_by_period(corpus, *cfg.period)
    app = cfg.applicant
    record = build_publication_record(
        corpus,
        ids=list(app.ids) if app.ids is not None else None,
        author=app.author,
        owner_label=app.label,
    )
    values = field_values_index(corpus, stop)
    seed = build_seed_record(record, corpus)
    profile = build_profile(seed, corpus, cfg.coverage_threshold, stop, values=values)
    sa = build_specialty_approximation(corpus, profile, cfg.min_fields, stop,
                                       values=values, workers=cfg.workers)
    figures = key_figures(app.label, app.domain_label, record, seed, sa)
    logger.info("%s: PR=%d SR=%d SA=%d", app.label, len(record), len(seed), len(sa))

    out = cfg.resolve(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    texts = {
        "publication_record.txt": render_id_list(record.ids),
        "seed_record.txt": render_id_list(seed.ids),
        "profile.txt": render_profile(profile, seed),
        "approximation.txt": render_id_list(sa.ids),
        "keyfigures.csv": render_key_figures_csv([figures]),
    }

    report = None
    if suggest or (suggest is None and cfg.exclusion_path):
        report = _suggest(cfg, corpus, record, sa, values)
        texts["suggestions.csv"] = render_suggestions_csv(report)
        texts["suggestions.txt"] = render_suggestions_text(report, app.label, app.domain_label)

    artifacts: dict[str, Path] = {}
    checksums: dict[str, str] = {}
    for name, text in texts.items():
        data = text.encode("utf-8")
        (out / name).write_bytes(data)
        artifacts[name] = out / name
        checksums[name] = hashlib.sha256(data).hexdigest()

    echo = cfg.to_mapping()
    # neither affects the results
    echo.pop("workers")
    echo.pop("output_dir")
    manifest = {"config": echo, "corpus_sha256": corpus_sha, "artifacts": checksums}
    (out / MANIFEST).write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    artifacts[MANIFEST] = out / MANIFEST
    return RunResult(corpus, record, seed, profile, sa, figures, report, artifacts)


def _suggest(cfg: RunConfig, corpus: Corpus, record: PublicationRecord,
             sa: SpecialtyApproximation, values) -> SuggestionReport:
    ex, extra_lists = ExclusionData(), {}
    if cfg.exclusion_path:
        ex, extra_lists = load_exclusions(cfg.resolve(cfg.exclusion_path))
    if cfg.applicant.author is not None:
        ex = replace(ex, applicant_authors=ex.applicant_authors | {normalize_author(cfg.applicant.author)})
    ex = derive_exclusions(ex, record, corpus)

    ranked = rank_authors(sa, corpus, values)
    candidates = apply_exclusions(ranked, ex, author_affiliations(corpus))
    report = suggest_reviewers(candidates, cfg.n_min, cfg.n_max)

    overlaps = {}
    if ex.applicant_suggested:
        overlaps["applicant_suggested"] = overlap_report(ex.applicant_suggested, sa, corpus)
    overlaps["bibliometric_suggestions"] = overlap_report({c.author for c in report.selected}, sa, corpus)
    for name, raw_names in sorted(extra_lists.items()):
        overlaps[name] = overlap_report({normalize_author(n) for n in raw_names}, sa, corpus)
    return replace(report, overlaps=overlaps)
