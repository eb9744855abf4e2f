"""Model-training data preparation.

Covers the character vocabulary with suffix-tagged Hokkien entries,
unused-slot replacement in a pretrained vocabulary, language-id assignment
from the ``_@`` convention, priority masking plans for newly created Hokkien
characters, deterministic 8:1:1 corpus splits with a held-out assessment set,
and the declarative training-stage manifests.  Nothing here launches
training.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .chars import HOK, HOK_MARK, ZH, is_han, lang_of_rendered

# The cross-lingual model's special tokens; a BERT-style list also works.
XLM_SPECIALS = ("<s>", "</s>", "<pad>", "<unk>", "<mask>")

_SPECIAL_SHAPE = re.compile(r"^(<[^<>]+>|\[[^\[\]]+\])$")
_PLACEHOLDER = re.compile(r"^\[unused\d+\]$")


class VocabError(ValueError):
    pass


@dataclass(frozen=True)
class Vocab:
    id_of: dict[str, int]
    specials: tuple[str, ...]
    hok_only: frozenset[str] = frozenset()

    def __post_init__(self):
        ids = sorted(self.id_of.values())
        if ids != list(range(len(self.id_of))):
            raise VocabError("ids must be dense from 0")

    def __len__(self) -> int:
        return len(self.id_of)

    def tokens(self) -> list[str]:
        inv = {i: t for t, i in self.id_of.items()}
        return [inv[i] for i in range(len(inv))]

    def save(self, path: str | Path) -> None:
        Path(path).write_text("\n".join(self.tokens()) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path, specials: Sequence[str] | None = None) -> "Vocab":
        toks = Path(path).read_text(encoding="utf-8").splitlines()
        if specials is None:
            n = 0
            while n < len(toks) and _SPECIAL_SHAPE.match(toks[n]) and not _PLACEHOLDER.match(toks[n]):
                n += 1
            specials = toks[:n]
        return cls(
            id_of={t: i for i, t in enumerate(toks)},
            specials=tuple(specials),
            hok_only=_hok_only({t: i for i, t in enumerate(toks)}),
        )


def _hok_only(id_of: Mapping[str, int]) -> frozenset[str]:
    return frozenset(
        t[: -len(HOK_MARK)]
        for t in id_of
        if t.endswith(HOK_MARK) and t[: -len(HOK_MARK)] not in id_of
    )


def build_vocab(
    streams: Iterable[tuple[str, str]],
    specials: Sequence[str] = XLM_SPECIALS,
) -> Vocab:
    """Character vocabulary from labeled corpus streams.

    ``streams`` yields ``(label, text)`` with label ``hok``, ``zh`` or
    ``mixed``.  Hokkien Han characters enter suffixed; Mandarin characters,
    Latin letters, Roman numerals, digits and punctuation enter bare.  A
    ``mixed`` stream must already be whitespace-separated rendered tokens.
    Ids go specials-first, then by first occurrence.
    """
    id_of: dict[str, int] = {}
    for sp in specials:
        if sp in id_of:
            raise VocabError(f"duplicate special {sp!r}")
        id_of[sp] = len(id_of)

    def add(token: str) -> None:
        if token not in id_of:
            id_of[token] = len(id_of)

    for label, text in streams:
        if label == "hok":
            for ch in text:
                if ch.isspace():
                    continue
                add(ch + HOK_MARK if is_han(ch) else ch)
        elif label == "zh":
            for ch in text:
                if not ch.isspace():
                    add(ch)
        elif label == "mixed":
            for tok in text.split():
                bare = tok[: -len(HOK_MARK)] if tok.endswith(HOK_MARK) else tok
                if len(bare) != 1:
                    raise VocabError(f"mixed stream carries an untagged run: {tok!r}")
                add(tok)
        else:
            raise VocabError(f"unknown stream label {label!r}")
    return Vocab(id_of=id_of, specials=tuple(specials), hok_only=_hok_only(id_of))


def replace_unused(base: Vocab, new_chars: Sequence[str]) -> Vocab:
    """Rename placeholder tokens (``[unusedN]``) to new characters, id-stable.

    The i-th placeholder in id order takes the i-th new character; raises
    when there are fewer placeholders than characters.
    """
    placeholders = [t for t in base.tokens() if _PLACEHOLDER.match(t)]
    if len(placeholders) < len(new_chars):
        raise VocabError(
            f"not enough placeholder slots: need {len(new_chars)}, "
            f"have {len(placeholders)} (shortfall {len(new_chars) - len(placeholders)})"
        )
    mapping = dict(zip(placeholders, new_chars))
    id_of = {mapping.get(t, t): i for t, i in base.id_of.items()}
    return Vocab(id_of=id_of, specials=base.specials, hok_only=_hok_only(id_of))


def assign_language_ids(tokens: Sequence[str]) -> list[str]:
    """Dynamic language id per rendered token: ``_@`` suffix means Hokkien."""
    return [lang_of_rendered(t) for t in tokens]


@dataclass(frozen=True)
class MaskPlan:
    positions: frozenset[int]
    base_p: float
    priority_multiplier: float


def plan_mlm_masks(
    seq: Sequence[int],
    vocab: Vocab,
    base_p: float,
    multiplier: float = 1.0,
    rng_seed: int = 0,
) -> MaskPlan:
    """Independent per-position masking with priority for Hokkien-only chars.

    Positions holding characters that exist only in suffixed form mask with
    probability ``min(1, multiplier * base_p)``; special tokens never mask.
    Deterministic under a fixed seed.
    """
    if not 0.0 <= base_p <= 1.0:
        raise ValueError(f"base_p out of range: {base_p}")
    if multiplier < 1.0:
        raise ValueError(f"multiplier must be >= 1: {multiplier}")
    if multiplier * base_p > 1.0 + 1e-12:
        raise ValueError("multiplier * base_p exceeds 1")
    tokens = vocab.tokens()
    special = {vocab.id_of[s] for s in vocab.specials if s in vocab.id_of}
    hi_p = min(1.0, multiplier * base_p)
    rng = random.Random(rng_seed)
    picked = set()
    for i, tid in enumerate(seq):
        if not 0 <= tid < len(tokens):
            raise ValueError(f"token id {tid} at position {i} is outside the vocabulary")
        if tid in special:
            continue
        tok = tokens[tid]
        priority = tok.endswith(HOK_MARK) and tok[: -len(HOK_MARK)] in vocab.hok_only
        if rng.random() < (hi_p if priority else base_p):
            picked.add(i)
    return MaskPlan(frozenset(picked), base_p, multiplier)


@dataclass(frozen=True)
class SplitSpec:
    ratios: tuple[int, int, int] = (8, 1, 1)
    seed: int = 0
    pad_ids: frozenset[str] = frozenset()


@dataclass(frozen=True)
class SplitResult:
    train: list
    valid: list
    test: list
    pad: list

    def sizes(self) -> dict[str, int]:
        return {
            "train": len(self.train),
            "valid": len(self.valid),
            "test": len(self.test),
            "pad": len(self.pad),
        }


def _apportion(n: int, ratios: tuple[int, int, int]) -> list[int]:
    # Largest-remainder so each part stays within one sentence of the exact
    # ratio; fractional ties go to train first.
    total = sum(ratios)
    targets = [n * r / total for r in ratios]
    sizes = [int(t) for t in targets]
    leftovers = sorted(
        range(len(ratios)),
        key=lambda i: (-(targets[i] - sizes[i]), i),
    )
    for i in range(n - sum(sizes)):  # at most len(ratios) - 1 units left
        sizes[leftovers[i]] += 1
    return sizes


def split_corpus(records: Sequence[Mapping], spec: SplitSpec, id_key: str = "id") -> SplitResult:
    """Extract the held-out set, then shuffle and cut the remainder 8:1:1."""
    known = {str(r[id_key]) for r in records}
    missing = sorted(spec.pad_ids - known)
    if missing:
        raise ValueError(f"unknown held-out id(s): {', '.join(missing)}")
    pad = [r for r in records if str(r[id_key]) in spec.pad_ids]
    rest = [r for r in records if str(r[id_key]) not in spec.pad_ids]
    rng = random.Random(spec.seed)
    rng.shuffle(rest)
    n_train, n_valid, n_test = _apportion(len(rest), spec.ratios)
    return SplitResult(
        train=rest[:n_train],
        valid=rest[n_train:n_train + n_valid],
        test=rest[n_train + n_valid:],
        pad=pad,
    )


MODEL_NAMES = ("XLM_M-M", "XLM_MT-M", "XLM_MT-C", "XLM_MT-CT")

SCRATCH = "scratch"
PREVIOUS = "previous_stage"


@dataclass(frozen=True)
class Stage:
    objectives: tuple[str, ...]
    corpora: tuple[str, ...]
    init: str


@dataclass(frozen=True)
class StageManifest:
    model_name: str
    stages: tuple[Stage, ...]

    def to_json_obj(self) -> dict:
        return {
            "model": self.model_name,
            "stages": [
                {"objectives": list(s.objectives), "corpora": list(s.corpora), "init": s.init}
                for s in self.stages
            ],
        }


_MONO = Stage(("CLM", "MLM"), ("ZH", "HOK"), PREVIOUS)
_ZH_MLM = Stage(("MLM",), ("ZH",), SCRATCH)
_TLM_MONO = Stage(("TLM",), ("HOK-ZH",), PREVIOUS)
_TLM_CM = Stage(("TLM",), ("CM-ZH",), PREVIOUS)


def emit_stage_manifest(model_name: str) -> StageManifest:
    """Declarative training plan for one of the four model variants."""
    if model_name == "XLM_M-M":
        stages = (Stage(("CLM", "MLM"), ("ZH", "HOK"), SCRATCH), _TLM_MONO)
    elif model_name == "XLM_MT-M":
        stages = (_ZH_MLM, _MONO, _TLM_MONO)
    elif model_name == "XLM_MT-C":
        stages = (_ZH_MLM, _MONO, _TLM_CM)
    elif model_name == "XLM_MT-CT":
        # continues from the monolingual-TLM model's parameters
        stages = (_ZH_MLM, _MONO, _TLM_MONO, _TLM_CM)
    else:
        raise ValueError(f"unknown model name {model_name!r}; expected one of {MODEL_NAMES}")
    return StageManifest(model_name, stages)


def write_split(result: SplitResult, out_dir: str | Path, spec: SplitSpec) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name in ("train", "valid", "test", "pad"):
        with (out / f"{name}.jsonl").open("w", encoding="utf-8") as fh:
            for rec in getattr(result, name):
                fh.write(json.dumps(rec, ensure_ascii=False) + "\n")
    meta = {
        "seed": spec.seed,
        "ratios": list(spec.ratios),
        "pad_ids": sorted(spec.pad_ids),
        "counts": result.sizes(),
    }
    (out / "split.meta.json").write_text(
        json.dumps(meta, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )
