"""Raw Hokkien text cleanup.

Three concerns, run in this order per sentence:

1. stray romanized (Tai-lo) tokens are converted to their written-Hokkien
   headword via the lexicon's romanization index;
2. literary/colloquial reading variants are rewritten through a data-driven
   replacement table (longest key first, one left-to-right pass);
3. sentences that still contain Latin script (Han-lo) or characters outside
   the project character set are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .chars import is_latin_letter, is_latin_run_char
from .lexicon import Lexicon

REJECT_HANLO = "hanlo"
REJECT_UNKNOWN = "unknown"


@dataclass(frozen=True)
class ReadingMap:
    """Character-string rewrite table for reading variants.

    Keys must not map to themselves and, on the corpora it ships with,
    applying the map twice must equal applying it once (no chained rewrites).
    """

    rules: dict[str, str]

    def __post_init__(self):
        for k, v in self.rules.items():
            if not k:
                raise ValueError("empty reading-map key")
            if k == v:
                raise ValueError(f"reading-map key {k!r} maps to itself")

    def apply(self, text: str) -> str:
        """One left-to-right pass, longest key first at each position."""
        if not self.rules:
            return text
        keys = sorted(self.rules, key=len, reverse=True)
        out = []
        i = 0
        while i < len(text):
            for k in keys:
                if text.startswith(k, i):
                    out.append(self.rules[k])
                    i += len(k)
                    break
            else:
                out.append(text[i])
                i += 1
        return "".join(out)


def load_reading_map(path: str | Path) -> ReadingMap:
    rules: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 2:
            raise ValueError(f"{path}:{lineno}: expected `from<TAB>to`")
        rules[cols[0]] = cols[1]
    return ReadingMap(rules)


def load_charset(path: str | Path) -> frozenset[str]:
    chars = set()
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        if raw.startswith("#") or not raw:
            continue
        chars.add(raw[0])
    return frozenset(chars)


@dataclass(frozen=True)
class NormalizedSentence:
    text: str
    converted_runs: tuple[str, ...] = ()
    unconverted_runs: tuple[str, ...] = ()

    @property
    def convertible(self) -> bool:
        return not self.unconverted_runs


def _latin_runs(text: str) -> list[tuple[int, int]]:
    runs = []
    i = 0
    while i < len(text):
        if is_latin_run_char(text[i]) and text[i] != "-":
            j = i
            # include any leading hyphens (Tai-lo enclitic marker)
            while i > 0 and text[i - 1] == "-" and (not runs or runs[-1][1] < i - 1):
                i -= 1
            while j < len(text) and is_latin_run_char(text[j]):
                j += 1
            runs.append((i, j))
            i = j
        else:
            i += 1
    return runs


def normalize_sentence(s: str, reading_map: ReadingMap, lex: Lexicon) -> NormalizedSentence:
    """Convert romanized runs to written Hokkien, then apply reading rules.

    Runs with no romanization-index match are left in place and reported in
    ``unconverted_runs``; the caller (usually :func:`filter_sentence`) decides
    whether that rejects the sentence.
    """
    converted: list[str] = []
    unconverted: list[str] = []
    pieces: list[str] = []
    last = 0
    for start, end in _latin_runs(s):
        pieces.append(s[last:start])
        run = s[start:end]
        # exact match first; leading hyphens are meaningful (enclitics),
        # trailing ones are run-boundary artifacts
        head = lex.headword_for_romanization(run)
        if head is None and run.rstrip("-") != run:
            head = lex.headword_for_romanization(run.rstrip("-"))
        if head is None:
            unconverted.append(run)
            pieces.append(run)
        else:
            converted.append(run)
            pieces.append(head)
        last = end
    pieces.append(s[last:])
    text = reading_map.apply("".join(pieces))
    return NormalizedSentence(text, tuple(converted), tuple(unconverted))


@dataclass(frozen=True)
class FilterResult:
    keep: bool
    reason: str | None = None


def filter_sentence(s: str, charset: frozenset[str]) -> FilterResult:
    """Reject Han-lo (leftover Latin script) first, then unknown characters."""
    if any(is_latin_letter(c) for c in s):
        return FilterResult(False, REJECT_HANLO)
    if any(c not in charset for c in s):
        return FilterResult(False, REJECT_UNKNOWN)
    return FilterResult(True)


@dataclass(frozen=True)
class NormalizationReport:
    input_count: int = 0
    kept: int = 0
    rejected_hanlo: int = 0
    rejected_unknown: int = 0
    tailo_converted: int = 0

    def __post_init__(self):
        counts = (self.input_count, self.kept, self.rejected_hanlo,
                  self.rejected_unknown, self.tailo_converted)
        if any(c < 0 for c in counts):
            raise ValueError("negative count in report")
        if self.kept + self.rejected_hanlo + self.rejected_unknown != self.input_count:
            raise ValueError("report counts do not reconcile")

    def to_dict(self) -> dict:
        return {
            "input_count": self.input_count,
            "kept": self.kept,
            "rejected_hanlo": self.rejected_hanlo,
            "rejected_unknown": self.rejected_unknown,
            "tailo_converted": self.tailo_converted,
        }


def normalize_corpus(
    sentences: list[str],
    reading_map: ReadingMap,
    lex: Lexicon,
    charset: frozenset[str],
) -> tuple[list[str], NormalizationReport]:
    """Normalize and filter a batch; returns kept sentences plus the tally.

    ``tailo_converted`` counts sentences in which at least one romanized run
    was converted, whether or not the sentence was ultimately kept.
    """
    kept: list[str] = []
    n_hanlo = n_unknown = n_converted = 0
    for s in sentences:
        norm = normalize_sentence(s, reading_map, lex)
        if norm.converted_runs:
            n_converted += 1
        res = filter_sentence(norm.text, charset)
        if res.keep:
            kept.append(norm.text)
        elif res.reason == REJECT_HANLO:
            n_hanlo += 1
        else:
            n_unknown += 1
    report = NormalizationReport(
        input_count=len(sentences),
        kept=len(kept),
        rejected_hanlo=n_hanlo,
        rejected_unknown=n_unknown,
        tailo_converted=n_converted,
    )
    return kept, report
