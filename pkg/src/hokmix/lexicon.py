"""Hokkien-Mandarin lexicon: load, merge and query headword senses.

The lexicon drives segmentation (headword matching), normalization
(romanization lookup) and synthesis (translations, POS and category flags).
File format is 5-column TSV, one sense per line:

    headword<TAB>pos<TAB>romanization<TAB>translations<TAB>flags

with ``|``-separated translations, ``;``-separated flags and ``#`` comments.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

POS_TAGS = frozenset({
    "N", "V", "ADJ", "ADV", "PREP", "PRON", "DET", "NUM", "CLF",
    "AUX", "CONJ", "PART", "PUNCT", "PROPER_PERSON", "PROPER_LOC", "UNK",
})

FLAGS = frozenset({"idiom", "proverb", "person", "location", "function", "identity"})

# POS classes whose tokens are adhesive/function units and therefore must
# never be switched on their own.
FUNCTION_POS = frozenset({"AUX", "CONJ", "PART", "DET", "CLF", "PREP", "PRON"})


class LexiconError(ValueError):
    """Malformed lexicon data; carries file path and line number when known."""

    def __init__(self, message: str, path: str | Path | None = None, line: int | None = None):
        loc = ""
        if path is not None:
            loc = f"{path}:"
        if line is not None:
            loc += f"{line}: "
        elif loc:
            loc += " "
        super().__init__(loc + message)
        self.path = str(path) if path is not None else None
        self.line = line


@dataclass(frozen=True)
class LexiconEntry:
    """One headword sense."""

    headword: str
    pos: str
    romanization: str = ""
    translations: tuple[str, ...] = ()
    flags: frozenset[str] = frozenset()

    def validate(self) -> None:
        if not self.headword or any(c.isspace() for c in self.headword):
            raise LexiconError(f"bad headword {self.headword!r}")
        if self.pos not in POS_TAGS:
            raise LexiconError(f"unknown POS {self.pos!r}")
        unknown = self.flags - FLAGS
        if unknown:
            raise LexiconError(f"unknown flag(s) {sorted(unknown)!r}")
        if "person" in self.flags and self.pos != "PROPER_PERSON":
            raise LexiconError(f"{self.headword}: person flag requires POS PROPER_PERSON")
        if "location" in self.flags and self.pos != "PROPER_LOC":
            raise LexiconError(f"{self.headword}: location flag requires POS PROPER_LOC")
        if "identity" in self.flags and self.headword not in self.translations:
            raise LexiconError(f"{self.headword}: identity flag requires the headword among translations")
        if (self.pos == "PUNCT") != all(_is_punct(c) for c in self.headword):
            raise LexiconError(f"{self.headword}: PUNCT is reserved for punctuation surfaces")

    @property
    def is_function_unit(self) -> bool:
        return "function" in self.flags or self.pos in FUNCTION_POS


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


@dataclass(frozen=True)
class Lexicon:
    """Immutable multimap headword -> ordered senses, safe to share across threads."""

    entries: dict[str, tuple[LexiconEntry, ...]] = field(default_factory=dict)
    romanization_index: dict[str, tuple[str, ...]] = field(default_factory=dict)
    max_headword_len: int = 1

    @classmethod
    def from_entries(cls, entries: Iterable[LexiconEntry]) -> "Lexicon":
        by_head: dict[str, list[LexiconEntry]] = {}
        rom: dict[str, list[str]] = {}
        for e in entries:
            by_head.setdefault(e.headword, []).append(e)
            if e.romanization and e.headword not in rom.get(e.romanization, ()):
                rom.setdefault(e.romanization, []).append(e.headword)
        max_len = max((len(h) for h in by_head), default=1)
        return cls(
            entries={h: tuple(es) for h, es in by_head.items()},
            romanization_index={r: tuple(hs) for r, hs in rom.items()},
            max_headword_len=max_len,
        )

    def lookup(self, surface: str) -> tuple[LexiconEntry, ...]:
        """All senses of ``surface`` in stored order; empty when absent."""
        return self.entries.get(surface, ())

    def headword_for_romanization(self, rom: str) -> str | None:
        heads = self.romanization_index.get(rom)
        return heads[0] if heads else None

    def __len__(self) -> int:
        return sum(len(es) for es in self.entries.values())

    def iter_entries(self) -> Iterable[LexiconEntry]:
        for senses in self.entries.values():
            yield from senses


def parse_row(line: str) -> LexiconEntry:
    cols = line.split("\t")
    if len(cols) != 5:
        raise LexiconError(f"expected 5 tab-separated columns, got {len(cols)}")
    headword, pos, rom, trans, flags = (c.strip() for c in cols)
    entry = LexiconEntry(
        headword=headword,
        pos=pos,
        romanization=rom,
        translations=tuple(t for t in trans.split("|") if t),
        flags=frozenset(f for f in flags.split(";") if f),
    )
    entry.validate()
    return entry


def load_lexicon(path: str | Path) -> Lexicon:
    """Load a lexicon TSV; identical duplicate rows are dropped silently."""
    path = Path(path)
    entries: list[LexiconEntry] = []
    seen: set[str] = set()
    with path.open(encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            if line in seen:
                continue
            seen.add(line)
            try:
                entries.append(parse_row(line))
            except LexiconError as err:
                raise LexiconError(str(err), path=path, line=lineno) from None
    return Lexicon.from_entries(entries)


def merge_custom(base: Lexicon, custom: Lexicon) -> Lexicon:
    """Merge a user lexicon over a base one.

    All senses of both survive; for a shared headword the custom senses come
    first, so they win every first-sense decision downstream.
    """
    merged: list[LexiconEntry] = []
    for head, senses in custom.entries.items():
        merged.extend(senses)
        merged.extend(base.entries.get(head, ()))
    for head, senses in base.entries.items():
        if head not in custom.entries:
            merged.extend(senses)
    return Lexicon.from_entries(merged)


def dumps(lex: Lexicon) -> str:
    """Serialize back to the TSV format accepted by :func:`load_lexicon`."""
    lines = []
    for entry in lex.iter_entries():
        lines.append("\t".join((
            entry.headword,
            entry.pos,
            entry.romanization,
            "|".join(entry.translations),
            ";".join(sorted(entry.flags)),
        )))
    return "\n".join(lines) + ("\n" if lines else "")


def save_lexicon(lex: Lexicon, path: str | Path) -> None:
    Path(path).write_text(dumps(lex), encoding="utf-8")
