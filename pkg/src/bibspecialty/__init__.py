"""Bibliometric specialty approximation and reviewer suggestion."""

from .corpus import Author, Corpus, CorpusWarning, Publication, filter_by_period, merge_corpora, validate_corpus
from .formats import parse_corpus, serialize_corpus
from .keyfigures import KeyFigures, key_figures, render_key_figures_csv
from .normalize import (
    FieldValues,
    StopWordList,
    default_stopwords,
    extract_field_values,
    normalize_author,
    normalize_reference,
    normalize_source,
    tokenize_title,
)
from .pipeline import (
    FieldFrequencyTable,
    KeyValueProfile,
    PublicationRecord,
    SeedRecord,
    SpecialtyApproximation,
    build_profile,
    build_publication_record,
    build_seed_record,
    build_specialty_approximation,
    field_frequency_table,
    match_count,
    select_key_values,
)
from .reviewers import (
    ExclusionData,
    ReviewerCandidate,
    SuggestionReport,
    apply_exclusions,
    overlap_report,
    rank_authors,
    suggest_reviewers,
)

__version__ = "0.1.0"
