"""Code-mixed sentence synthesis under the matrix-language frame.

Hokkien is the matrix language; selected units are replaced by Mandarin and
every remaining Hokkien character is rendered with the ``_@`` suffix.

Switch-point candidates are collected in rule order:

1. HEAD_NOUN        - the head noun of each noun group;
2. IDIOM            - idiom-flagged tokens (proverbs are kept);
3. PERSON_LOC       - person/location-flagged tokens;
4. NP_VP            - whole NP and VP chunks;
5. NOUN_AFTER_PREP  - the noun token immediately after a preposition.

Candidates are then filtered.  In both modes a lone function unit (flagged
``function`` or with adhesive POS) never switches.  In ``cm`` mode a range
containing a preposition must cover that preposition's whole PP, and the
replacement must come from a precise sense (single translation or identity)
whose dictionary POS equals the source head's POS.  In ``cmda`` mode those
two checks are skipped and only single common-noun tokens switch, rendered
with their ambiguity-tolerant reading: the surface itself when the headword
is identity-flagged or has several senses, otherwise the first translation.
Overlapping survivors resolve to the lowest rule number, then longest range.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .chars import HOK, ZH, is_language_independent, render_char
from .lexicon import Lexicon, LexiconEntry
from .normalize import NormalizationReport, ReadingMap, filter_sentence, normalize_sentence
from .segment import SegmentedSentence, Token, chunk_phrases, segment

CM = "cm"
CMDA = "cmda"
MODES = (CM, CMDA)

RULE_HEAD_NOUN = "HEAD_NOUN"
RULE_IDIOM = "IDIOM"
RULE_PERSON_LOC = "PERSON_LOC"
RULE_NP_VP = "NP_VP"
RULE_NOUN_AFTER_PREP = "NOUN_AFTER_PREP"

_RULE_ORDER = {
    RULE_HEAD_NOUN: 1,
    RULE_IDIOM: 2,
    RULE_PERSON_LOC: 3,
    RULE_NP_VP: 4,
    RULE_NOUN_AFTER_PREP: 5,
}

_NOMINAL = frozenset({"N", "PROPER_PERSON", "PROPER_LOC"})


class SwitchError(ValueError):
    """Switch list violates its contract (overlap or out-of-range)."""


@dataclass(frozen=True)
class SwitchPoint:
    start: int  # token index, inclusive
    end: int    # token index, exclusive
    rule: str
    replacement: str
    precise: bool

    @property
    def token_range(self) -> tuple[int, int]:
        return (self.start, self.end)


@dataclass(frozen=True)
class CodeMixedSentence:
    emitted: tuple[tuple[str, str], ...]  # (character, HOK|ZH)
    switches: tuple[SwitchPoint, ...]
    mode: str
    source_id: str

    def render(self) -> str:
        return " ".join(render_char(ch, lang) for ch, lang in self.emitted)


def _is_precise(senses: Sequence[LexiconEntry]) -> bool:
    if any("identity" in s.flags for s in senses):
        return True
    return len(senses) == 1 and len(senses[0].translations) == 1


def _resolve_cm(surface: str, head_pos: str, lex: Lexicon) -> tuple[str, bool] | None:
    """First sense with a precise translation whose dictionary POS matches."""
    for sense in lex.lookup(surface):
        if not sense.translations:
            continue
        if "identity" in sense.flags:
            repl = surface
        elif len(sense.translations) == 1:
            repl = sense.translations[0]
        else:
            continue
        if any(e.pos == head_pos for e in lex.lookup(repl)):
            return repl, True
    return None


def _resolve_cmda(surface: str, lex: Lexicon) -> tuple[str, bool] | None:
    senses = lex.lookup(surface)
    if not senses:
        return None
    if len(senses) > 1 or any("identity" in s.flags for s in senses):
        return surface, _is_precise(senses)
    if senses[0].translations:
        return senses[0].translations[0], _is_precise(senses)
    return None


@dataclass(frozen=True)
class _Candidate:
    rule: str
    start: int
    end: int
    head: int  # token index whose POS anchors the equivalence check


def _collect_candidates(seg: SegmentedSentence) -> list[_Candidate]:
    tokens = seg.tokens
    cands: list[_Candidate] = []
    for h in seg.np_heads:
        if tokens[h].pos == "N":
            cands.append(_Candidate(RULE_HEAD_NOUN, h, h + 1, h))
    for i, tok in enumerate(tokens):
        flags = tok.entry.flags if tok.entry else frozenset()
        if "idiom" in flags and "proverb" not in flags:
            cands.append(_Candidate(RULE_IDIOM, i, i + 1, i))
    for i, tok in enumerate(tokens):
        flags = tok.entry.flags if tok.entry else frozenset()
        if "person" in flags or "location" in flags:
            cands.append(_Candidate(RULE_PERSON_LOC, i, i + 1, i))
    for chunk in seg.chunks:
        if chunk.kind == "NP":
            cands.append(_Candidate(RULE_NP_VP, chunk.start, chunk.end, chunk.head))
        elif chunk.kind == "VP":
            cands.append(_Candidate(RULE_NP_VP, chunk.start, chunk.end, chunk.start))
    for i, tok in enumerate(tokens[:-1]):
        if tok.pos == "PREP" and tokens[i + 1].pos in _NOMINAL:
            cands.append(_Candidate(RULE_NOUN_AFTER_PREP, i + 1, i + 2, i + 1))
    return cands


def _is_protected(cand: _Candidate, tokens: tuple[Token, ...]) -> bool:
    """Single-token units that never switch: function units and proverbs."""
    if cand.end - cand.start != 1:
        return False
    tok = tokens[cand.start]
    if tok.entry is not None and ("function" in tok.entry.flags or "proverb" in tok.entry.flags):
        return True
    return tok.pos in {"AUX", "CONJ", "PART", "DET", "CLF", "PREP", "PRON"}


def _violates_functional_head(cand: _Candidate, seg: SegmentedSentence) -> bool:
    """A range containing a PREP must cover that PREP's full PP chunk."""
    for i in range(cand.start, cand.end):
        if seg.tokens[i].pos != "PREP":
            continue
        pp = next((c for c in seg.chunks if c.kind == "PP" and c.start <= i < c.end), None)
        if pp is None or cand.start > pp.start or cand.end < pp.end:
            return True
    return False


def find_switch_points(seg: SegmentedSentence, lex: Lexicon, mode: str) -> list[SwitchPoint]:
    """Switchable units of a chunked sentence; may be empty."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    tokens = seg.tokens
    survivors: list[tuple[_Candidate, str, bool]] = []
    for cand in _collect_candidates(seg):
        if _is_protected(cand, tokens):
            continue
        surface = "".join(t.surface for t in tokens[cand.start:cand.end])
        if mode == CM:
            if _violates_functional_head(cand, seg):
                continue
            resolved = _resolve_cm(surface, tokens[cand.head].pos, lex)
        else:
            if cand.end - cand.start != 1 or tokens[cand.head].pos != "N":
                continue
            resolved = _resolve_cmda(surface, lex)
        if resolved is None:
            continue
        survivors.append((cand, resolved[0], resolved[1]))

    survivors.sort(key=lambda s: (_RULE_ORDER[s[0].rule], s[0].start - s[0].end, s[0].start))
    kept: list[tuple[_Candidate, str, bool]] = []
    for cand, repl, precise in survivors:
        if all(cand.end <= k.start or cand.start >= k.end for k, _, _ in kept):
            kept.append((cand, repl, precise))
    kept.sort(key=lambda s: s[0].start)
    return [SwitchPoint(c.start, c.end, c.rule, repl, precise) for c, repl, precise in kept]


def apply_switches(
    seg: SegmentedSentence,
    switches: Sequence[SwitchPoint],
    mode: str,
    source_id: str = "",
) -> CodeMixedSentence:
    """Emit the character stream: switched ranges in Mandarin, the rest in
    suffix-tagged Hokkien.  Language-independent characters (punctuation,
    digits, Latin) are always emitted bare."""
    ordered = sorted(switches, key=lambda sw: sw.start)
    prev_end = 0
    for sw in ordered:
        if sw.start < prev_end or sw.end > len(seg.tokens) or sw.start >= sw.end:
            raise SwitchError(f"switch {sw.token_range} overlaps or exceeds the sentence")
        prev_end = sw.end
    emitted: list[tuple[str, str]] = []
    by_start = {sw.start: sw for sw in ordered}
    i = 0
    while i < len(seg.tokens):
        sw = by_start.get(i)
        if sw is not None:
            emitted.extend((ch, ZH) for ch in sw.replacement)
            i = sw.end
            continue
        for ch in seg.tokens[i].surface:
            emitted.append((ch, ZH if is_language_independent(ch) else HOK))
        i += 1
    return CodeMixedSentence(tuple(emitted), tuple(ordered), mode, source_id)


@dataclass(frozen=True)
class CorpusRecord:
    sentence: CodeMixedSentence
    source_hok: str
    source_zh: str

    def to_json_obj(self) -> dict:
        return {
            "id": self.sentence.source_id,
            "mode": self.sentence.mode,
            "source_hok": self.source_hok,
            "source_zh": self.source_zh,
            "cm": self.sentence.render(),
            "switches": [
                {
                    "range": [sw.start, sw.end],
                    "rule": sw.rule,
                    "replacement": sw.replacement,
                    "precise": sw.precise,
                }
                for sw in self.sentence.switches
            ],
        }


def synthesize_sentence(
    hok: str,
    lex: Lexicon,
    reading_map: ReadingMap,
    charset: frozenset[str],
    mode: str,
) -> tuple[CodeMixedSentence | None, str | None]:
    """Run the per-sentence pipeline; returns (sentence, reject_reason)."""
    norm = normalize_sentence(hok, reading_map, lex)
    verdict = filter_sentence(norm.text, charset)
    if not verdict.keep:
        return None, verdict.reason
    seg = chunk_phrases(segment(norm.text, lex))
    switches = find_switch_points(seg, lex, mode)
    return apply_switches(seg, switches, mode), None


def synthesize_corpus(
    pairs: Sequence[tuple[str, str]],
    lex: Lexicon,
    reading_map: ReadingMap,
    charset: frozenset[str],
    mode: str,
    keep_unswitched: bool = False,
    jobs: int = 1,
) -> tuple[list[CorpusRecord], NormalizationReport]:
    """Synthesize a code-mixed corpus from (hokkien, mandarin) pairs.

    Sentences rejected by filtering, or with zero switch points (unless
    ``keep_unswitched``), are omitted; ids record the input position so the
    output order is stable regardless of ``jobs``.
    """

    def work(item: tuple[int, tuple[str, str]]):
        idx, (hok, zh) = item
        norm = normalize_sentence(hok, reading_map, lex)
        verdict = filter_sentence(norm.text, charset)
        if not verdict.keep:
            return idx, None, verdict.reason, bool(norm.converted_runs), zh
        seg = chunk_phrases(segment(norm.text, lex))
        switches = find_switch_points(seg, lex, mode)
        cm = apply_switches(seg, switches, mode, source_id=str(idx))
        return idx, cm, None, bool(norm.converted_runs), zh

    items = list(enumerate(pairs))
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(work, items))
    else:
        results = [work(it) for it in items]

    records: list[CorpusRecord] = []
    n_kept = n_hanlo = n_unknown = n_converted = 0
    for idx, cm, reason, converted, zh in results:
        if converted:
            n_converted += 1
        if cm is None:
            if reason == "hanlo":
                n_hanlo += 1
            else:
                n_unknown += 1
            continue
        n_kept += 1
        if cm.switches or keep_unswitched:
            records.append(CorpusRecord(cm, pairs[idx][0], zh))
    report = NormalizationReport(
        input_count=len(pairs),
        kept=n_kept,
        rejected_hanlo=n_hanlo,
        rejected_unknown=n_unknown,
        tailo_converted=n_converted,
    )
    return records, report


def write_corpus_jsonl(records: Iterable[CorpusRecord], fh) -> None:
    for rec in records:
        fh.write(json.dumps(rec.to_json_obj(), ensure_ascii=False) + "\n")


def read_corpus_jsonl(fh) -> list[dict]:
    return [json.loads(line) for line in fh if line.strip()]
