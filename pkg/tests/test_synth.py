import math
import warnings
from collections import Counter

import numpy as np
import pytest

from bibspecialty.corpus import validate_corpus
from bibspecialty.errors import InfeasibleParams
from bibspecialty.formats import parse_corpus, serialize_corpus
from bibspecialty.normalize import normalize_author, normalize_reference, publication_ref_key, tokenize_title
from bibspecialty.normalize import StopWordList
from bibspecialty.synth import SynthParams, generate_corpus, make_rng, sample_power_law, sample_power_law_many


def lotka_slope(corpus, min_count=5):
    """Least-squares slope of log(#authors with k papers) against log k, over k with >= min_count authors."""
    per_author = Counter(normalize_author(a.name) for p in corpus for a in p.authors)
    hist = Counter(per_author.values())
    ks = sorted(k for k, c in hist.items() if c >= min_count)
    x = np.log(ks)
    y = np.log([hist[k] for k in ks])
    return float(np.polyfit(x, y, 1)[0])


def test_power_law_degenerate_support():
    rng = make_rng(3)
    assert {sample_power_law(rng, 2.0, 1) for _ in range(50)} == {1}


def test_power_law_same_seed_same_draws():
    a = [sample_power_law(make_rng(11), 1.5, 100) for _ in range(3)]
    assert len(set(a)) == 1
    assert np.array_equal(sample_power_law_many(make_rng(11), 2.0, 50, 200),
                          sample_power_law_many(make_rng(11), 2.0, 50, 200))


def test_power_law_bounds_and_bad_args():
    draws = sample_power_law_many(make_rng(0), 1.2, 7, 2000)
    assert draws.min() >= 1 and draws.max() <= 7
    with pytest.raises(ValueError):
        sample_power_law(make_rng(0), 0.0, 5)
    with pytest.raises(ValueError):
        sample_power_law_many(make_rng(0), 2.0, 0, 5)


def test_power_law_k1_share_small_sample():
    # P(k=1) of an exponent-2 power law on a huge support tends to 6/pi^2
    draws = sample_power_law_many(make_rng(1), 2.0, 10**6, 20_000)
    assert abs(np.mean(draws == 1) - 6 / math.pi ** 2) < 0.02


def test_single_publication():
    c = generate_corpus(SynthParams(n_publications=1, n_authors=5, rng_seed=4))
    assert len(c) == 1
    assert next(iter(c)).references == ()


def test_byte_identical_for_fixed_seed():
    params = SynthParams(n_publications=200, n_authors=400, rng_seed=42)
    for fmt in ("jsonl", "tagged"):
        assert serialize_corpus(generate_corpus(params), fmt) == serialize_corpus(generate_corpus(params), fmt)
    other = SynthParams(n_publications=200, n_authors=400, rng_seed=43)
    assert serialize_corpus(generate_corpus(params), "jsonl") != serialize_corpus(generate_corpus(other), "jsonl")


def test_references_cite_earlier_records():
    c = generate_corpus(SynthParams(n_publications=300, n_authors=600, rng_seed=9))
    order = {pid: i for i, pid in enumerate(c.ids)}
    by_key = {}
    for p in c:
        by_key.setdefault(publication_ref_key(p), []).append(order[p.id])
    n_refs = 0
    for p in c:
        for r in p.references:
            n_refs += 1
            targets = by_key[normalize_reference(r)]
            assert min(targets) < order[p.id]
    assert n_refs > 0


def test_round_trip_and_validate():
    c = generate_corpus(SynthParams(n_publications=150, n_authors=300, rng_seed=2))
    for fmt in ("jsonl", "tagged"):
        assert parse_corpus(serialize_corpus(c, fmt), fmt) == c
    # reference counts may be zero, author lists never are
    warns = validate_corpus(c)
    assert warns and all(w.message == "empty references" for w in warns)
    assert len(warns) == sum(1 for p in c if not p.references)


def test_authors_unique_within_record():
    with pytest.warns(InfeasibleParams):
        c = generate_corpus(SynthParams(n_publications=500, n_authors=200, authors_per_pub=(3, 6), rng_seed=5))
    for p in c:
        names = [a.name for a in p.authors]
        assert len(names) == len(set(names))


def test_short_author_pool_warns():
    with pytest.warns(InfeasibleParams):
        c = generate_corpus(SynthParams(n_publications=100, n_authors=3, authors_per_pub=(2, 2), rng_seed=1))
    assert len(c) == 100


def test_clamped_references_warn():
    with pytest.warns(InfeasibleParams):
        generate_corpus(SynthParams(n_publications=20, n_authors=100, refs_per_pub=(5, 8), rng_seed=1))


def test_default_refs_do_not_warn():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        generate_corpus(SynthParams(n_publications=50, n_authors=200, rng_seed=1))


def test_zipf_title_words_rank_frequency():
    c = generate_corpus(SynthParams(n_publications=2000, n_authors=4000, vocabulary_size=500, rng_seed=8))
    stop = StopWordList(frozenset())
    counts = Counter(w for p in c for w in p.title.lower().split())
    freq = sorted(counts.values(), reverse=True)
    # exponent 1: rank 1 about twice rank 2 and ten times rank 10
    assert 1.5 < freq[0] / freq[1] < 2.8
    assert 6 < freq[0] / freq[9] < 15
    assert all(tokenize_title(p.title, stop) for p in c)


def test_source_skew():
    c = generate_corpus(SynthParams(n_publications=2000, n_authors=4000, n_sources=50, rng_seed=8))
    counts = Counter(p.source for p in c).most_common()
    assert counts[0][1] > 3 * counts[9][1]


def test_lotka_slope_moderate_size():
    c = generate_corpus(SynthParams(n_publications=3000, n_authors=6000, rng_seed=7))
    assert -2.4 <= lotka_slope(c) <= -1.6


@pytest.mark.parametrize("bad", [
    {"n_publications": 0}, {"lotka_exponent": 0}, {"refs_per_pub": (3, 1)},
    {"authors_per_pub": (0, 2)}, {"year_range": (1000, 2000)}, {"rng_seed": -1},
])
def test_invalid_params(bad):
    with pytest.raises(ValueError):
        SynthParams(**bad)


def test_params_mapping_round_trip():
    p = SynthParams(n_publications=10, refs_per_pub=(1, 2), rng_seed=3)
    assert SynthParams.from_mapping(p.to_mapping()) == p
    with pytest.raises(ValueError):
        SynthParams.from_mapping({"n_pubs": 3})
