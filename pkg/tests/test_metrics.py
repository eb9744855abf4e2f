from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hokmix.chars import HOK, OTHER, ZH
from hokmix.metrics import (
    compute_cmi,
    compute_spf,
    corpus_stats,
    langseq_of,
    stats_from_rendered,
)
from hokmix.segment import chunk_phrases, segment
from hokmix.synthesize import CM, apply_switches, find_switch_points


def cmi_oracle(tags):
    """Independent route: minority share over language-bearing tokens."""
    hok = tags.count(HOK)
    zh = tags.count(ZH)
    if hok + zh == 0:
        return 0.0
    return min(hok, zh) / (hok + zh)


def spf_oracle(tags):
    """Independent route: language runs minus one, over pair count."""
    lang = [t for t in tags if t != OTHER]
    if len(lang) < 2:
        return 0.0
    runs = len(list(itertools.groupby(lang)))
    return (runs - 1) / (len(lang) - 1)


def test_cmi_monolingual():
    assert compute_cmi([HOK, HOK, HOK]) == 0.0


def test_cmi_simple_mix():
    assert compute_cmi([HOK, HOK, ZH, HOK]) == pytest.approx(0.25)


def test_cmi_all_other():
    assert compute_cmi([OTHER, OTHER]) == 0.0


def test_cmi_empty_is_error():
    with pytest.raises(ValueError):
        compute_cmi([])


def test_spf_no_switches():
    assert compute_spf([HOK, HOK, HOK]) == 0.0


def test_spf_alternating():
    assert compute_spf([HOK, ZH, HOK, ZH]) == pytest.approx(1.0)


def test_spf_single_switch():
    assert compute_spf([HOK, HOK, ZH, ZH]) == pytest.approx(1 / 3)


def test_spf_short_sequences():
    assert compute_spf([]) == 0.0
    assert compute_spf([HOK]) == 0.0
    assert compute_spf([HOK, OTHER]) == 0.0


def test_exhaustive_oracle_equivalence():
    for length in range(1, 9):
        for tags in itertools.product((HOK, ZH, OTHER), repeat=length):
            tags = list(tags)
            assert abs(compute_cmi(tags) - cmi_oracle(tags)) <= 1e-12, tags
            assert abs(compute_spf(tags) - spf_oracle(tags)) <= 1e-12, tags


_TAGS = st.lists(st.sampled_from([HOK, ZH, OTHER]), min_size=1, max_size=12)


@given(_TAGS, st.randoms(use_true_random=False))
def test_cmi_permutation_invariant(tags, rng):
    shuffled = list(tags)
    rng.shuffle(shuffled)
    assert compute_cmi(shuffled) == pytest.approx(compute_cmi(tags))


@given(_TAGS)
def test_spf_reversal_invariant(tags):
    assert compute_spf(list(reversed(tags))) == pytest.approx(compute_spf(tags))


@given(_TAGS, st.integers(min_value=0, max_value=12))
def test_other_insertion_invariant(tags, pos):
    inserted = tags[: pos % (len(tags) + 1)] + [OTHER] + tags[pos % (len(tags) + 1):]
    assert compute_cmi(inserted) == pytest.approx(compute_cmi(tags))
    assert compute_spf(inserted) == pytest.approx(compute_spf(tags))


def _cm(sentence, lexicon, mode=CM):
    seg = chunk_phrases(segment(sentence, lexicon))
    return apply_switches(seg, find_switch_points(seg, lexicon, mode), mode)


def test_langseq_marks_punctuation_other(lexicon):
    cm = _cm("這个袂使,彼个毋通,全你的意見了了。", lexicon)
    tags = langseq_of(cm)
    assert len(tags) == len(cm.emitted)
    assert tags.count(OTHER) == 3  # two commas and the full stop


def test_corpus_stats_monolingual():
    stats = stats_from_rendered(["物_@ 件_@ 毋_@ 通_@"])
    assert stats.sentence_count == 1
    assert stats.cmi_mean == 0.0
    assert stats.spf_mean == 0.0


def test_corpus_stats_mean_of_sentences():
    # CMI 0.25 (1 of 4 minority) and 0.75 is impossible (capped at .5 for two
    # languages), so use 0.25 and 0.5 and check the arithmetic mean.
    stats = stats_from_rendered(["甲_@ 乙_@ 丙_@ 丁", "甲_@ 乙"])
    assert stats.cmi_mean == pytest.approx((0.25 + 0.5) / 2)


def test_corpus_stats_empty():
    stats = corpus_stats([])
    assert stats.sentence_count == 0
    assert stats.cmi_mean == stats.spf_mean == stats.symbol_coverage == 0.0


def test_symbol_coverage_counts_switched_types(lexicon):
    cm = _cm("佇美東時間四號深夜十一點宣布", lexicon)
    stats = corpus_stats([cm])
    # switched types: 美東時間 + 子夜 = 6 unique chars; corpus types: 14 chars
    seen = {ch for ch, _ in cm.emitted}
    assert stats.symbol_coverage == pytest.approx(6 / len(seen))
