"""Code-mixing complexity metrics and corpus statistics.

CMI (code-mixing index, fractional form) measures how far the sentence is
from monolingual: ``1 - w_max/(n - u)`` with ``w_max`` the dominant language
count and ``u`` the language-independent count; 0 for monolingual input.
SPF (switch-point fraction) is the share of adjacent language-bearing pairs
whose languages differ; language-independent units are transparent.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .chars import HOK, OTHER, ZH, is_language_independent
from .synthesize import CodeMixedSentence

TAGS = (HOK, ZH, OTHER)


def langseq_of(sentence: CodeMixedSentence) -> list[str]:
    """Per-character language tags; punctuation/digits become OTHER."""
    return [
        OTHER if is_language_independent(ch) else lang
        for ch, lang in sentence.emitted
    ]


def langseq_of_rendered(text: str) -> list[str]:
    from .chars import parse_rendered

    return [
        OTHER if is_language_independent(ch) else lang
        for ch, lang in parse_rendered(text)
    ]


def compute_cmi(tags: Sequence[str]) -> float:
    if not tags:
        raise ValueError("CMI is undefined for an empty sequence")
    n = len(tags)
    counts = Counter(t for t in tags if t != OTHER)
    u = n - sum(counts.values())
    if n == u:
        return 0.0
    return 1.0 - max(counts.values()) / (n - u)


def compute_spf(tags: Sequence[str]) -> float:
    lang_only = [t for t in tags if t != OTHER]
    if len(lang_only) < 2:
        return 0.0
    switches = sum(1 for a, b in zip(lang_only, lang_only[1:]) if a != b)
    return switches / (len(lang_only) - 1)


@dataclass(frozen=True)
class CorpusStats:
    sentence_count: int
    cmi_mean: float
    spf_mean: float
    symbol_coverage: float

    def to_dict(self) -> dict:
        return {
            "sentence_count": self.sentence_count,
            "cmi_mean": self.cmi_mean,
            "spf_mean": self.spf_mean,
            "symbol_coverage": self.symbol_coverage,
        }


def corpus_stats(sentences: Sequence[CodeMixedSentence]) -> CorpusStats:
    """Per-sentence means plus symbol coverage.

    Symbol coverage here is the switched-character type ratio: unique
    Mandarin-tagged characters over unique characters in the corpus.  The
    original statistic was never given a definition, so this is a stand-in
    and is labeled as such wherever it is printed.
    """
    if not sentences:
        return CorpusStats(0, 0.0, 0.0, 0.0)
    cmis = []
    spfs = []
    switched: set[str] = set()
    seen: set[str] = set()
    for s in sentences:
        tags = langseq_of(s)
        cmis.append(compute_cmi(tags))
        spfs.append(compute_spf(tags))
        for ch, lang in s.emitted:
            seen.add(ch)
            if lang == ZH and not is_language_independent(ch):
                switched.add(ch)
    return CorpusStats(
        sentence_count=len(sentences),
        cmi_mean=sum(cmis) / len(cmis),
        spf_mean=sum(spfs) / len(spfs),
        symbol_coverage=len(switched) / len(seen) if seen else 0.0,
    )


def stats_from_rendered(rendered: Sequence[str]) -> CorpusStats:
    """Corpus stats straight from rendered ``cm`` strings (e.g. a JSONL file)."""
    from .chars import parse_rendered

    sentences = [
        CodeMixedSentence(tuple(parse_rendered(text)), (), "cm", str(i))
        for i, text in enumerate(rendered)
    ]
    return corpus_stats(sentences)
