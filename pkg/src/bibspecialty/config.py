"""Run configuration (YAML) for the command-line pipeline.

Example::

    corpus_paths: [corpus.jsonl]
    format: jsonl
    period: [2014, 2017]
    coverage_threshold: 0.5
    min_fields: 3
    n_min: 5
    n_max: 7
    stopword_path: null
    applicant:
      label: A_1
      domain: Bioengineering
      author: "Verbeek, N."          # or ids: [P1, P2]
    exclusion_path: exclusions.yaml
    output_dir: out
    workers: 1

Only ``corpus_paths`` and ``applicant`` are required. Relative paths are
resolved against the directory holding the config file.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Mapping

import yaml

from .errors import ConfigError
from .formats import FORMATS
from .pipeline import DEFAULT_MIN_FIELDS, DEFAULT_THRESHOLD
from .reviewers import DEFAULT_N_MAX, DEFAULT_N_MIN


@dataclass(frozen=True)
class ApplicantSelector:
    label: str
    domain_label: str = ""
    ids: tuple[str, ...] | None = None
    author: str | None = None

    def to_mapping(self) -> dict[str, Any]:
        out: dict[str, Any] = {"label": self.label, "domain": self.domain_label}
        if self.ids is not None:
            out["ids"] = list(self.ids)
        if self.author is not None:
            out["author"] = self.author
        return out


@dataclass(frozen=True)
class RunConfig:
    corpus_paths: tuple[str, ...]
    applicant: ApplicantSelector
    format: str = "jsonl"
    period: tuple[int, int] | None = None
    coverage_threshold: float = DEFAULT_THRESHOLD
    min_fields: int = DEFAULT_MIN_FIELDS
    n_min: int = DEFAULT_N_MIN
    n_max: int = DEFAULT_N_MAX
    stopword_path: str | None = None
    exclusion_path: str | None = None
    output_dir: str = "out"
    workers: int = 1
    base_dir: Path = field(default=Path("."), compare=False, repr=False)

    def __post_init__(self) -> None:
        _validate(self)

    def resolve(self, path: str) -> Path:
        p = Path(path)
        return p if p.is_absolute() else self.base_dir / p

    def with_overrides(self, **overrides: Any) -> "RunConfig":
        given = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **given) if given else self

    def to_mapping(self) -> dict[str, Any]:
        return {
            "corpus_paths": list(self.corpus_paths),
            "format": self.format,
            "period": list(self.period) if self.period else None,
            "coverage_threshold": self.coverage_threshold,
            "min_fields": self.min_fields,
            "n_min": self.n_min,
            "n_max": self.n_max,
            "stopword_path": self.stopword_path,
            "applicant": self.applicant.to_mapping(),
            "exclusion_path": self.exclusion_path,
            "output_dir": self.output_dir,
            "workers": self.workers,
        }


def _is_int(x: Any) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _validate(cfg: RunConfig) -> None:
    if not cfg.corpus_paths:
        raise ConfigError("corpus_paths", "at least one corpus file is required")
    if cfg.format not in FORMATS:
        raise ConfigError("format", f"must be one of {', '.join(FORMATS)}")
    if cfg.period is not None:
        if len(cfg.period) != 2 or not all(_is_int(y) for y in cfg.period) or cfg.period[0] > cfg.period[1]:
            raise ConfigError("period", "must be [start_year, end_year] with start <= end")
    t = cfg.coverage_threshold
    if isinstance(t, bool) or not isinstance(t, (int, float)) or not 0 <= t <= 1:
        raise ConfigError("coverage_threshold", "must be a number in [0, 1]")
    if not _is_int(cfg.min_fields) or not 1 <= cfg.min_fields <= 4:
        raise ConfigError("min_fields", "must be an integer in [1, 4]")
    if not _is_int(cfg.n_min) or cfg.n_min < 1:
        raise ConfigError("n_min", "must be a positive integer")
    if not _is_int(cfg.n_max) or cfg.n_max < cfg.n_min:
        raise ConfigError("n_max", "must be an integer >= n_min")
    if not _is_int(cfg.workers) or cfg.workers < 1:
        raise ConfigError("workers", "must be a positive integer")
    a = cfg.applicant
    if not a.label:
        raise ConfigError("applicant.label", "required")
    if (a.ids is None) == (a.author is None):
        raise ConfigError("applicant", "give exactly one of ids or author")
    if a.ids is not None and not a.ids:
        raise ConfigError("applicant.ids", "must not be empty")


_TOP_KEYS = {f.name for f in fields(RunConfig)} - {"base_dir"}
_APPLICANT_KEYS = {"label", "domain", "ids", "author"}


def _applicant(raw: Any) -> ApplicantSelector:
    if not isinstance(raw, Mapping):
        raise ConfigError("applicant", "must be a mapping")
    unknown = set(raw) - _APPLICANT_KEYS
    if unknown:
        raise ConfigError(f"applicant.{sorted(unknown)[0]}", "unknown key")
    ids = raw.get("ids")
    if ids is not None:
        if isinstance(ids, str) or not isinstance(ids, list):
            raise ConfigError("applicant.ids", "must be a list")
        ids = tuple(str(i) for i in ids)
    author = raw.get("author")
    return ApplicantSelector(
        label=str(raw.get("label") or ""),
        domain_label=str(raw.get("domain") or ""),
        ids=ids,
        author=None if author is None else str(author),
    )


def config_from_mapping(data: Mapping[str, Any], base_dir: Path | str = ".") -> RunConfig:
    unknown = set(data) - _TOP_KEYS
    if unknown:
        raise ConfigError(sorted(unknown)[0], "unknown key")
    if "applicant" not in data:
        raise ConfigError("applicant", "required")
    paths = data.get("corpus_paths")
    if isinstance(paths, str):
        paths = [paths]
    if not isinstance(paths, list):
        raise ConfigError("corpus_paths", "must be a list of paths")
    kwargs: dict[str, Any] = {k: v for k, v in data.items()
                              if k not in ("applicant", "corpus_paths", "period") and v is not None}
    period = data.get("period")
    if period is not None:
        if not isinstance(period, list):
            raise ConfigError("period", "must be [start_year, end_year]")
        kwargs["period"] = tuple(period)
    return RunConfig(
        corpus_paths=tuple(str(p) for p in paths),
        applicant=_applicant(data["applicant"]),
        base_dir=Path(base_dir),
        **kwargs,
    )


def load_config(content: bytes | str, base_dir: Path | str = ".") -> RunConfig:
    try:
        data = yaml.safe_load(content)
    except yaml.YAMLError as exc:
        raise ConfigError("<config>", f"not valid YAML: {exc}") from exc
    if not isinstance(data, Mapping):
        raise ConfigError("<config>", "top level must be a mapping")
    return config_from_mapping(data, base_dir)


def load_config_file(path: str | Path) -> RunConfig:
    path = Path(path)
    try:
        content = path.read_bytes()
    except OSError as exc:
        raise ConfigError("<config>", f"cannot read {path}: {exc.strerror}") from exc
    return load_config(content, path.parent)


def dump_config(cfg: RunConfig) -> str:
    return yaml.safe_dump(cfg.to_mapping(), sort_keys=False, allow_unicode=True)
