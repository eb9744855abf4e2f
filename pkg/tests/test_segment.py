from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import GOLDEN_SEGMENTATION
from hokmix.lexicon import Lexicon, LexiconEntry
from hokmix.segment import (
    Chunk,
    Token,
    build_lattice,
    chunk_phrases,
    present_tokens,
    segment,
)


def mini_lexicon(*headwords_pos):
    return Lexicon.from_entries([LexiconEntry(h, p) for h, p in headwords_pos])


def enumerate_expected_arcs(text, lex):
    """Oracle: every substring that is a headword, plus fallbacks where no
    single-character entry covers a position."""
    arcs = set()
    for i in range(len(text)):
        for j in range(i + 1, len(text) + 1):
            if lex.lookup(text[i:j]):
                arcs.add((i, j, "lex"))
        if (i, i + 1, "lex") not in arcs:
            arcs.add((i, i + 1, "fallback"))
    return arcs


def lattice_arcs(lat):
    out = set()
    for start, arcs in lat.arcs.items():
        for arc in arcs:
            out.add((start, arc.end, "fallback" if arc.entry is None else "lex"))
    return out


def test_lattice_two_char_word():
    lex = mini_lexicon(("毋通", "AUX"))
    lat = build_lattice("毋通", lex)
    assert lattice_arcs(lat) == {(0, 1, "fallback"), (0, 2, "lex"), (1, 2, "fallback")}


def test_lattice_single_unknown_char():
    lat = build_lattice("龜", mini_lexicon(("好", "ADJ")))
    assert lattice_arcs(lat) == {(0, 1, "fallback")}


def test_lattice_overlapping_entries():
    lex = mini_lexicon(("一四界", "ADV"), ("四", "NUM"))
    lat = build_lattice("一四界", lex)
    arcs = lattice_arcs(lat)
    assert arcs == enumerate_expected_arcs("一四界", lex)
    assert len(arcs) == 4


@pytest.mark.parametrize("text", ["毋通掖甲", "一四界一", "物件毋通掖甲一四界"])
def test_lattice_matches_enumeration_oracle(text, lexicon):
    assert lattice_arcs(build_lattice(text, lexicon)) == enumerate_expected_arcs(text, lexicon)


@pytest.mark.parametrize("sentence,expected", GOLDEN_SEGMENTATION)
def test_golden_segmentation(sentence, expected, lexicon):
    assert present_tokens(segment(sentence, lexicon)) == expected


def test_empty_string_yields_no_tokens(lexicon):
    assert segment("", lexicon).tokens == ()


def test_punctuation_is_separate_token(lexicon):
    tokens = segment("你一月日趁偌濟錢？", lexicon).tokens
    assert [t.surface for t in tokens] == ["你", "一月日", "趁", "偌濟", "錢", "？"]
    assert tokens[-1].pos == "PUNCT"


def test_fallback_pos_unk(lexicon):
    tokens = segment("龜", lexicon).tokens
    assert tokens[0].pos == "UNK"


def test_token_span_validation():
    with pytest.raises(ValueError):
        Token("好", 0, 2, "ADJ")


_SENTENCE_WORDS = st.lists(
    st.sampled_from([
        "物件", "毋通", "掖", "甲", "一四界", "你", "一月日", "趁", "偌濟", "錢",
        "佮", "伊", "計較", "佇", "美東時間", "深夜", "意見", "願望", "。", "，", "龜",
    ]),
    min_size=1, max_size=10,
)


@settings(max_examples=150, deadline=None)
@given(words=_SENTENCE_WORDS)
def test_tiling_and_determinism(words, lexicon):
    text = "".join(words)
    seg = segment(text, lexicon)
    assert "".join(t.surface for t in seg.tokens) == text
    assert segment(text, lexicon) == seg
    for tok in seg.tokens:
        if len(tok.surface) > 1:
            assert lexicon.lookup(tok.surface)


def test_chunks_pp_over_prep_and_pron(lexicon):
    seg = chunk_phrases(segment("你毋通佮伊計較", lexicon))
    assert Chunk("PP", 2, 4) in seg.chunks
    pps = [c for c in seg.chunks if c.kind == "PP"]
    assert all(seg.tokens[c.start].pos == "PREP" for c in pps)


def test_chunks_singleton_np(lexicon):
    seg = chunk_phrases(segment("教授", lexicon))
    assert seg.chunks == (Chunk("NP", 0, 1, head=0),)
    assert seg.np_heads == (0,)


def test_chunks_vp_absorbs_np_and_keeps_head(lexicon):
    seg = chunk_phrases(segment("做教授", lexicon))
    assert seg.chunks == (Chunk("VP", 0, 2),)
    assert seg.np_heads == (1,)
    assert seg.tokens[1].surface == "教授"


def test_chunk_soundness(lexicon):
    sentences = [
        "佇美東時間四號深夜十一點宣布",
        "這个袂使,彼个毋通,全你的意見了了。",
        "做教授是我一生的願望。",
        "我的目尾開始有皺痕矣。",
    ]
    for s in sentences:
        seg = chunk_phrases(segment(s, lexicon))
        spans = sorted((c.start, c.end) for c in seg.chunks)
        for (s0, e0), (s1, e1) in zip(spans, spans[1:]):
            assert e0 <= s1, "chunks overlap"
        for c in seg.chunks:
            assert c.end > c.start
            if c.kind == "PP":
                assert seg.tokens[c.start].pos == "PREP"
            if c.kind == "VP":
                assert sum(1 for t in seg.tokens[c.start:c.end] if t.pos == "V") == 1
            if c.kind == "NP":
                assert seg.tokens[c.head].pos in {"N", "PROPER_PERSON", "PROPER_LOC"}


def test_news_sentence_chunking(lexicon):
    seg = chunk_phrases(segment("佇美東時間四號深夜十一點宣布", lexicon))
    assert [t.surface for t in seg.tokens] == [
        "佇", "美東時間", "四", "號", "深夜", "十一", "點", "宣布"]
    assert Chunk("PP", 0, 2) in seg.chunks
    assert Chunk("NP", 2, 5, head=4) in seg.chunks
    assert 4 in seg.np_heads  # 深夜 heads its noun group
    assert 1 in seg.np_heads  # the location inside the PP is still a recorded head
