"""Dictionary-lattice word segmentation and head-driven phrase chunking.

Segmentation builds a lattice of lexicon matches over the sentence (plus a
single-character fallback wherever no one-character entry exists) and picks
the path with the fewest tokens, breaking ties by fewest fallback arcs and
then by taking the longest arc at the earliest divergence point.  Known
multi-character words therefore always beat character-by-character splits.

Chunking is a flat, right-to-left pass: it finds maximal noun groups ending
in a nominal head, then attaches them to a preceding preposition (PP) or verb
(VP); remaining groups become NP chunks.  Heads of all noun groups are kept
on the sentence, including groups absorbed into a VP or PP, because the
synthesis rules target head nouns wherever they sit.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .chars import HOK, is_punct
from .lexicon import Lexicon, LexiconEntry

NOMINAL_POS = frozenset({"N", "PROPER_PERSON", "PROPER_LOC"})
NOUN_GROUP_POS = frozenset({"DET", "NUM", "CLF", "ADJ", "N"})


@dataclass(frozen=True)
class Token:
    surface: str
    start: int
    end: int
    pos: str
    lang: str = HOK
    entry: LexiconEntry | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.end <= self.start or len(self.surface) != self.end - self.start:
            raise ValueError(f"bad span for token {self.surface!r}")


@dataclass(frozen=True)
class Chunk:
    kind: str  # NP | VP | PP
    start: int  # token index, inclusive
    end: int    # token index, exclusive
    head: int | None = None  # nominal head token index for NP chunks


@dataclass(frozen=True)
class SegmentedSentence:
    text: str
    tokens: tuple[Token, ...]
    chunks: tuple[Chunk, ...] = ()
    np_heads: tuple[int, ...] = ()  # every noun-group head, incl. groups inside VP/PP


@dataclass(frozen=True)
class Arc:
    end: int
    entry: LexiconEntry | None  # None = single-character fallback


@dataclass(frozen=True)
class Lattice:
    text: str
    arcs: dict[int, tuple[Arc, ...]]


def build_lattice(s: str, lex: Lexicon) -> Lattice:
    """All lexicon matches at every offset, plus per-character fallbacks.

    A fallback arc is only added where no single-character lexicon entry
    covers that position, so every offset has at least one outgoing arc.
    """
    if not s:
        raise ValueError("cannot build a lattice over an empty string")
    arcs: dict[int, list[Arc]] = {i: [] for i in range(len(s))}
    for i in range(len(s)):
        max_len = min(lex.max_headword_len, len(s) - i)
        for length in range(1, max_len + 1):
            senses = lex.lookup(s[i:i + length])
            if senses:
                arcs[i].append(Arc(i + length, senses[0]))
        if not any(a.end == i + 1 for a in arcs[i]):
            arcs[i].append(Arc(i + 1, None))
    return Lattice(s, {i: tuple(a) for i, a in arcs.items()})


def _best_path(lat: Lattice) -> list[Arc]:
    n = len(lat.text)
    # cost = (token count, fallback count, negated arc lengths left to right)
    best: list[tuple | None] = [None] * (n + 1)
    best[n] = (0, 0, ())
    for i in range(n - 1, -1, -1):
        for arc in lat.arcs[i]:
            tail = best[arc.end]
            if tail is None:
                continue
            cost = (
                1 + tail[0],
                (1 if arc.entry is None else 0) + tail[1],
                (i - arc.end,) + tail[2],
            )
            if best[i] is None or cost < best[i]:
                best[i] = cost
    path = []
    i = 0
    while i < n:
        want = best[i]
        for arc in lat.arcs[i]:
            tail = best[arc.end]
            if tail is None:
                continue
            cost = (1 + tail[0], (1 if arc.entry is None else 0) + tail[1], (i - arc.end,) + tail[2])
            if cost == want:
                path.append(arc)
                i = arc.end
                break
    return path


def segment(s: str, lex: Lexicon) -> SegmentedSentence:
    """Segment a normalized sentence; deterministic, chunks left empty.

    POS comes from the first sense of the matched headword; fallback tokens
    get UNK, or PUNCT when the character is punctuation.
    """
    if not s:
        return SegmentedSentence(text="", tokens=())
    tokens = []
    pos_at = 0
    for arc in _best_path(build_lattice(s, lex)):
        surface = s[pos_at:arc.end]
        if arc.entry is not None:
            pos = arc.entry.pos
        else:
            pos = "PUNCT" if is_punct(surface) else "UNK"
        tokens.append(Token(surface, pos_at, arc.end, pos, entry=arc.entry))
        pos_at = arc.end
    return SegmentedSentence(text=s, tokens=tuple(tokens))


def _noun_groups(tokens: tuple[Token, ...]) -> list[tuple[int, int, int]]:
    """Maximal (start, end, head) noun groups, scanning right to left."""
    groups = []
    i = len(tokens) - 1
    while i >= 0:
        if tokens[i].pos in NOMINAL_POS:
            j = i
            while j - 1 >= 0 and tokens[j - 1].pos in NOUN_GROUP_POS:
                j -= 1
            groups.append((j, i + 1, i))
            i = j - 1
        else:
            i -= 1
    groups.reverse()
    return groups


def chunk_phrases(seg: SegmentedSentence) -> SegmentedSentence:
    """Attach flat NP/VP/PP chunks and record every noun-group head."""
    tokens = seg.tokens
    groups = _noun_groups(tokens)
    group_at = {start: (start, end, head) for start, end, head in groups}
    np_heads = tuple(head for _, _, head in groups)

    chunks: list[Chunk] = []
    consumed: set[int] = set()
    i = 0
    while i < len(tokens):
        if i in consumed:
            i += 1
            continue
        tok = tokens[i]
        nxt = i + 1
        if tok.pos == "PREP":
            if nxt in group_at:
                end = group_at[nxt][1]
                chunks.append(Chunk("PP", i, end))
                consumed.update(range(i, end))
                i = end
                continue
            if nxt < len(tokens) and tokens[nxt].pos == "PRON":
                chunks.append(Chunk("PP", i, nxt + 1))
                consumed.update((i, nxt))
                i = nxt + 1
                continue
        elif tok.pos == "V":
            if nxt in group_at:
                end = group_at[nxt][1]
                chunks.append(Chunk("VP", i, end))
                consumed.update(range(i, end))
                i = end
                continue
            chunks.append(Chunk("VP", i, i + 1))
            consumed.add(i)
            i += 1
            continue
        elif i in group_at:
            start, end, head = group_at[i]
            chunks.append(Chunk("NP", start, end, head=head))
            consumed.update(range(start, end))
            i = end
            continue
        i += 1
    return replace(seg, chunks=tuple(chunks), np_heads=np_heads)


def present_tokens(seg: SegmentedSentence, with_pos: bool = False) -> str:
    """Comma-joined presentation; punctuation attaches to the previous cell."""
    cells: list[str] = []
    for tok in seg.tokens:
        text = tok.surface + (f"/{tok.pos}" if with_pos else "")
        if tok.pos == "PUNCT" and cells:
            cells[-1] += text
        else:
            cells.append(text)
    return ",".join(cells)
