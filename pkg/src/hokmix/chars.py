"""Character classification helpers shared across the pipeline."""

from __future__ import annotations

import unicodedata

# Suffix appended to every Hokkien character in code-mixed output and in the
# character vocabulary; Mandarin characters stay bare.
HOK_MARK = "_@"

HOK = "HOK"
ZH = "ZH"
OTHER = "OTHER"

_HAN_RANGES = (
    (0x4E00, 0x9FFF),    # CJK Unified Ideographs
    (0x3400, 0x4DBF),    # Extension A
    (0x20000, 0x2A6DF),  # Extension B
    (0xF900, 0xFAFF),    # Compatibility Ideographs
)


def is_han(ch: str) -> bool:
    cp = ord(ch)
    return any(lo <= cp <= hi for lo, hi in _HAN_RANGES)


def is_punct(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def is_latin_letter(ch: str) -> bool:
    """True for Latin letters including the extended/diacritic forms used by
    romanized Hokkien (Tai-lo, POJ)."""
    if not ch.isalpha():
        return False
    return "LATIN" in unicodedata.name(ch, "")


def is_combining_mark(ch: str) -> bool:
    return unicodedata.category(ch) == "Mn"


def is_latin_run_char(ch: str) -> bool:
    """Characters that may belong to a romanized-Hokkien token: Latin letters,
    their combining diacritics, and the syllable hyphen."""
    return ch == "-" or is_combining_mark(ch) or is_latin_letter(ch)


def is_language_independent(ch: str) -> bool:
    """Characters that carry no Hokkien/Mandarin identity: punctuation,
    digits, Roman numerals, Latin letters, symbols and spaces."""
    if is_latin_letter(ch):
        return True
    cat = unicodedata.category(ch)
    return cat[0] in ("P", "S", "Z", "N")


def render_char(ch: str, lang: str) -> str:
    return ch + HOK_MARK if lang == HOK else ch


def lang_of_rendered(token: str) -> str:
    return HOK if token.endswith(HOK_MARK) else ZH


def parse_rendered(text: str) -> list[tuple[str, str]]:
    """Parse a space-joined rendered sentence back into (char, lang) pairs.

    Inverse of the emitter: ``c_@`` tokens are Hokkien, bare tokens Mandarin.
    """
    pairs = []
    for tok in text.split(" "):
        if not tok:
            continue
        if tok.endswith(HOK_MARK) and len(tok) == len(HOK_MARK) + 1:
            pairs.append((tok[: -len(HOK_MARK)], HOK))
        elif len(tok) == 1:
            pairs.append((tok, ZH))
        else:
            raise ValueError(f"not a rendered character token: {tok!r}")
    return pairs
