"""Command-line interface.

Exit codes: 0 success, 1 pipeline error, 2 configuration or usage error.
"""

from __future__ import annotations

import functools
import logging
import re
import sys
from contextlib import contextmanager
from pathlib import Path

import click
import yaml

from .config import RunConfig, load_config_file
from .corpus import merge_corpora, validate_corpus
from .errors import BibSpecialtyError, ConfigError
from .formats import FORMATS, parse_corpus, serialize_corpus
from .keyfigures import parse_key_figures_rows, render_key_figures_csv
from .runner import run_pipeline
from .synth import SynthParams, generate_corpus


@contextmanager
def _exit_codes():
    try:
        yield
    except ConfigError as exc:
        click.echo(f"configuration error: {exc}", err=True)
        sys.exit(2)
    except (BibSpecialtyError, OSError, ValueError, yaml.YAMLError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)


def _parse_period(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(\d{4})\s*[-:]\s*(\d{4})\s*", text)
    if not m:
        raise ConfigError("period", f"expected START-END, got {text!r}")
    return int(m.group(1)), int(m.group(2))


def _run_options(fn):
    options = [
        click.argument("config", type=click.Path(dir_okay=False, path_type=Path)),
        click.option("--coverage-threshold", type=float, help="Share of the seed record each key set must cover."),
        click.option("--min-fields", type=int, help="Fields a publication must match (1-4)."),
        click.option("--n-min", type=int, help="Minimum number of suggested reviewers."),
        click.option("--n-max", type=int, help="Maximum number of suggested reviewers."),
        click.option("--period", help="Publication period, e.g. 2014-2017."),
        click.option("--format", "fmt", type=click.Choice(FORMATS), help="Corpus file format."),
        click.option("--output-dir", help="Directory for artifacts."),
        click.option("--workers", type=int, help="Threads for the approximation scan."),
    ]
    for opt in reversed(options):
        fn = opt(fn)
    return fn


def _config(config: Path, coverage_threshold, min_fields, n_min, n_max, period, fmt,
            output_dir, workers) -> RunConfig:
    cfg = load_config_file(config)
    return cfg.with_overrides(
        coverage_threshold=coverage_threshold,
        min_fields=min_fields,
        n_min=n_min,
        n_max=n_max,
        period=_parse_period(period) if period else None,
        format=fmt,
        output_dir=str(Path(output_dir).resolve()) if output_dir else None,
        workers=workers,
    )


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Log progress to stderr.")
def cli(verbose: bool) -> None:
    """Bibliometric specialty approximation and reviewer suggestion."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")


@cli.command()
@click.argument("corpus", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="jsonl", show_default=True)
def validate(corpus: tuple[Path, ...], fmt: str) -> None:
    """Parse corpus files and list incomplete records."""
    with _exit_codes():
        merged = merge_corpora(parse_corpus(p.read_bytes(), fmt, str(p)) for p in corpus)
        warnings = validate_corpus(merged)
        for w in warnings:
            click.echo(f"warning: {w}")
        click.echo(f"{len(merged)} records, {len(warnings)} warnings")


@cli.command()
@_run_options
def approximate(config, **opts) -> None:
    """Phases 1-3: seed record, key values, specialty approximation, key figures."""
    with _exit_codes():
        result = run_pipeline(_config(config, **opts), suggest=False)
        click.echo(render_key_figures_csv([result.figures]), nl=False)


@cli.command()
@_run_options
def suggest(config, **opts) -> None:
    """Approximate, then rank authors and apply conflict-of-interest exclusions."""
    with _exit_codes():
        result = run_pipeline(_config(config, **opts), suggest=True)
        click.echo(result.artifacts["suggestions.txt"].read_text(encoding="utf-8"), nl=False)


@cli.command()
@click.option("--config", "params_path", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="YAML file of generator parameters.")
@click.option("--seed", type=int, help="Override rng_seed.")
@click.option("--n-publications", type=int, help="Override n_publications.")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="jsonl", show_default=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False, path_type=Path), required=True)
def synth(params_path, seed, n_publications, fmt, output) -> None:
    """Generate a synthetic corpus."""
    with _exit_codes():
        data = {}
        if params_path:
            try:
                data = yaml.safe_load(params_path.read_text(encoding="utf-8")) or {}
            except yaml.YAMLError as exc:
                raise ConfigError(str(params_path), "not valid YAML") from exc
        if seed is not None:
            data["rng_seed"] = seed
        if n_publications is not None:
            data["n_publications"] = n_publications
        try:
            params = SynthParams.from_mapping(data)
        except (TypeError, ValueError) as exc:
            raise ConfigError("synth", str(exc)) from exc
        output.write_bytes(serialize_corpus(generate_corpus(params), fmt))


@cli.command()
@click.argument("rows_file", required=False, type=click.File("r", encoding="utf-8"))
@click.option("--row", "rows", multiple=True, help="applicant,domain,pr,sr,sa (repeatable).")
@click.option("-o", "--output", type=click.Path(dir_okay=False, path_type=Path))
def keyfigures(rows_file, rows, output) -> None:
    """Render key-figure counts as CSV (applicant,domain,pr,sr,sa)."""
    with _exit_codes():
        lines = list(rows_file) if rows_file else []
        lines += list(rows)
        text = render_key_figures_csv(parse_key_figures_rows(lines))
        if output:
            output.write_text(text, encoding="utf-8")
        else:
            click.echo(text, nl=False)


main = functools.partial(cli, prog_name="bibspecialty")
