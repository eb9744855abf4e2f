"""Command-line entry point orchestrating the pipeline.

Subcommands map 1:1 onto the library: normalize, segment, synthesize, stats,
split, vocab, mask-preview, manifest, kappa, serve.  A flat ``key = value``
config file can pin any of the shared options; explicit flags win.  All
outputs are deterministic for fixed inputs, flags and seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager
from importlib import resources
from pathlib import Path

from . import annotation, metrics, modelprep, normalize, segment, synthesize
from .lexicon import LexiconError, load_lexicon, merge_custom

DATA_KEYS = ("lexicon", "custom_lexicon", "readings", "charset")
CONFIG_KEYS = DATA_KEYS + ("mode", "seed", "ratios", "base_p", "multiplier", "port")


def packaged_data(name: str) -> Path:
    return Path(str(resources.files("hokmix").joinpath("data", name)))


def load_config(path: str | None) -> dict:
    """Flat TOML-style ``key = value`` file; quotes optional, ``#`` comments."""
    if not path:
        return {}
    conf = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected `key = value`")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in CONFIG_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
        conf[key] = value.strip().strip("\"'")
    return conf


def effective(args: argparse.Namespace, conf: dict, key: str, default=None):
    flag = getattr(args, key, None)
    if flag is not None:
        return flag
    if key in conf:
        return conf[key]
    return default


def _load_pipeline_inputs(args, conf):
    lex_path = effective(args, conf, "lexicon", packaged_data("lexicon.tsv"))
    lex = load_lexicon(lex_path)
    custom_path = effective(args, conf, "custom_lexicon")
    if custom_path:
        lex = merge_custom(lex, load_lexicon(custom_path))
    readings = normalize.load_reading_map(
        effective(args, conf, "readings", packaged_data("readings.tsv")))
    charset = normalize.load_charset(
        effective(args, conf, "charset", packaged_data("charset.txt")))
    return lex, readings, charset


def _read_lines(path: str) -> list[str]:
    return [ln for ln in Path(path).read_text(encoding="utf-8").splitlines() if ln.strip()]


def _read_pairs(path: str) -> list[tuple[str, str]]:
    pairs = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 2:
            raise ValueError(f"{path}:{lineno}: expected `hokkien<TAB>mandarin`")
        pairs.append((cols[0], cols[1]))
    return pairs


@contextmanager
def _out_handle(path: str | None):
    if path:
        with Path(path).open("w", encoding="utf-8") as fh:
            yield fh
    else:
        yield sys.stdout


def cmd_normalize(args, conf) -> int:
    lex, readings, charset = _load_pipeline_inputs(args, conf)
    kept, report = normalize.normalize_corpus(_read_lines(args.infile), readings, lex, charset)
    with _out_handle(args.out) as fh:
        for line in kept:
            fh.write(line + "\n")
    payload = json.dumps(report.to_dict(), ensure_ascii=False)
    if args.report:
        Path(args.report).write_text(payload + "\n", encoding="utf-8")
    else:
        print(payload, file=sys.stderr)
    return 0


def cmd_segment(args, conf) -> int:
    lex, _, _ = _load_pipeline_inputs(args, conf)
    with _out_handle(args.out) as fh:
        for line in _read_lines(args.infile):
            seg = segment.segment(line, lex)
            if args.chunks:
                seg = segment.chunk_phrases(seg)
                fh.write(json.dumps({
                    "text": seg.text,
                    "tokens": [
                        {"surface": t.surface, "start": t.start, "end": t.end,
                         "pos": t.pos, "lang": t.lang}
                        for t in seg.tokens
                    ],
                    "chunks": [
                        {"kind": c.kind, "start": c.start, "end": c.end, "head": c.head}
                        for c in seg.chunks
                    ],
                    "np_heads": list(seg.np_heads),
                }, ensure_ascii=False) + "\n")
            else:
                fh.write(segment.present_tokens(seg, with_pos=args.pos) + "\n")
    return 0


def cmd_synthesize(args, conf) -> int:
    lex, readings, charset = _load_pipeline_inputs(args, conf)
    mode = effective(args, conf, "mode", synthesize.CM)
    if mode not in synthesize.MODES:
        raise ValueError(f"unknown mode {mode!r}; expected cm or cmda")
    records, report = synthesize.synthesize_corpus(
        _read_pairs(args.infile), lex, readings, charset, mode,
        keep_unswitched=args.keep_unswitched, jobs=args.jobs,
    )
    with _out_handle(args.out) as fh:
        synthesize.write_corpus_jsonl(records, fh)
    payload = json.dumps({**report.to_dict(), "emitted": len(records)}, ensure_ascii=False)
    if args.report:
        Path(args.report).write_text(payload + "\n", encoding="utf-8")
    else:
        print(payload, file=sys.stderr)
    return 0


def cmd_stats(args, conf) -> int:
    with Path(args.infile).open(encoding="utf-8") as fh:
        rows = synthesize.read_corpus_jsonl(fh)
    rendered = [r["cm"] for r in rows]
    stats = metrics.stats_from_rendered(rendered)
    header = "sentences\tsymbol_coverage[switched-type-ratio]\tcmi\tspf"
    row = (f"{stats.sentence_count}\t{stats.symbol_coverage:.4f}"
           f"\t{stats.cmi_mean:.3f}\t{stats.spf_mean:.3f}")
    with _out_handle(args.out) as fh:
        fh.write(header + "\n" + row + "\n")
    if args.figures:
        from .report import render_metric_figures

        seqs = [metrics.langseq_of_rendered(t) for t in rendered]
        paths = render_metric_figures(
            [metrics.compute_cmi(s) for s in seqs] if seqs else [],
            [metrics.compute_spf(s) for s in seqs] if seqs else [],
            args.figures,
        )
        for p in paths:
            print(f"wrote {p}", file=sys.stderr)
    return 0


def cmd_split(args, conf) -> int:
    with Path(args.infile).open(encoding="utf-8") as fh:
        rows = synthesize.read_corpus_jsonl(fh)
    pad_ids: set[str] = set()
    if args.pad_ids:
        pad_ids.update(x.strip() for x in args.pad_ids.split(",") if x.strip())
    if args.pad_file:
        pad_ids.update(_read_lines(args.pad_file))
    ratios = tuple(int(x) for x in str(effective(args, conf, "ratios", "8:1:1")).split(":"))
    if len(ratios) != 3:
        raise ValueError("ratios must look like 8:1:1")
    spec = modelprep.SplitSpec(
        ratios=ratios,
        seed=int(effective(args, conf, "seed", 0)),
        pad_ids=frozenset(pad_ids),
    )
    result = modelprep.split_corpus(rows, spec)
    modelprep.write_split(result, args.out_dir, spec)
    print(json.dumps(result.sizes()), file=sys.stderr)
    return 0


def cmd_vocab(args, conf) -> int:
    if args.base:
        if not args.new_chars:
            raise ValueError("--base requires --new-chars")
        base = modelprep.Vocab.load(args.base)
        chars = [c for line in _read_lines(args.new_chars) for c in line.strip()]
        vocab = modelprep.replace_unused(base, chars)
    else:
        streams = []
        for label, paths in (("hok", args.hok), ("zh", args.zh), ("mixed", args.mixed)):
            for p in paths or ():
                streams.append((label, Path(p).read_text(encoding="utf-8")))
        if not streams:
            raise ValueError("no corpus streams given (--hok/--zh/--mixed)")
        specials = tuple(args.specials.split(",")) if args.specials else modelprep.XLM_SPECIALS
        vocab = modelprep.build_vocab(streams, specials)
    vocab.save(args.out)
    print(json.dumps({"tokens": len(vocab), "hok_only": len(vocab.hok_only)}), file=sys.stderr)
    return 0


def cmd_mask_preview(args, conf) -> int:
    vocab = modelprep.Vocab.load(args.vocab)
    tokens = Path(args.infile).read_text(encoding="utf-8").split()
    unk = vocab.id_of.get("<unk>", 0)
    ids = [vocab.id_of.get(t, unk) for t in tokens]
    plan = modelprep.plan_mlm_masks(
        ids, vocab,
        base_p=float(effective(args, conf, "base_p", 0.15)),
        multiplier=float(effective(args, conf, "multiplier", 2.0)),
        rng_seed=int(effective(args, conf, "seed", 0)),
    )
    preview = " ".join(
        "[MASK]" if i in plan.positions else t for i, t in enumerate(tokens)
    )
    with _out_handle(args.out) as fh:
        fh.write(json.dumps({
            "positions": sorted(plan.positions),
            "base_p": plan.base_p,
            "priority_multiplier": plan.priority_multiplier,
            "preview": preview,
        }, ensure_ascii=False) + "\n")
    return 0


def cmd_manifest(args, conf) -> int:
    manifest = modelprep.emit_stage_manifest(args.model)
    with _out_handle(args.out) as fh:
        fh.write(json.dumps(manifest.to_json_obj(), indent=2) + "\n")
    return 0


def cmd_kappa(args, conf) -> int:
    value = annotation.agreement_kappa(_read_lines(args.labels_a), _read_lines(args.labels_b))
    with _out_handle(args.out) as fh:
        fh.write(json.dumps({"kappa": value}) + "\n")
    return 0


def cmd_serve(args, conf) -> int:
    import uvicorn

    from .service import create_app

    with Path(args.pool).open(encoding="utf-8") as fh:
        rows = synthesize.read_corpus_jsonl(fh)
    tasks = annotation.sample_pool(
        [r["cm"] for r in rows], args.sample, seed=int(effective(args, conf, "seed", 0)))
    log = annotation.RecordLog(args.log)
    annotators = [a.strip() for a in args.annotators.split(",") if a.strip()]
    app = create_app(tasks, log, annotators)
    uvicorn.run(app, host=args.host, port=int(effective(args, conf, "port", 8000)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hokmix", description=__doc__)
    parser.add_argument("--config", help="flat key = value config file")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_data_flags(p):
        p.add_argument("--lexicon", help="base lexicon TSV (default: packaged fixture)")
        p.add_argument("--custom", dest="custom_lexicon", help="custom lexicon TSV merged over the base")
        p.add_argument("--readings", help="reading-variant rewrite TSV")
        p.add_argument("--charset", help="allowed character set, one char per line")

    p = sub.add_parser("normalize", help="clean raw Hokkien text and filter mixed-script lines")
    add_data_flags(p)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out")
    p.add_argument("--report", help="write the normalization tally as JSON here")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("segment", help="dictionary-lattice word segmentation")
    add_data_flags(p)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out")
    p.add_argument("--pos", action="store_true", help="append /TAG to every token")
    p.add_argument("--chunks", action="store_true", help="emit JSON-lines with tokens and chunks")
    p.set_defaults(func=cmd_segment)

    p = sub.add_parser("synthesize", help="build a code-mixed corpus from parallel pairs")
    add_data_flags(p)
    p.add_argument("--mode", choices=synthesize.MODES)
    p.add_argument("--in", dest="infile", required=True, help="TSV of hokkien<TAB>mandarin pairs")
    p.add_argument("--out")
    p.add_argument("--keep-unswitched", action="store_true",
                   help="keep sentences with zero switch points")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--report")
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("stats", help="corpus statistics row (and optional figures)")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out")
    p.add_argument("--figures", help="directory for CMI/SPF histogram PNGs")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("split", help="deterministic train/valid/test split with held-out ids")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--ratios")
    p.add_argument("--pad-ids", help="comma-separated held-out sentence ids")
    p.add_argument("--pad-file", help="file of held-out ids, one per line")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("vocab", help="build a character vocabulary or replace unused slots")
    p.add_argument("--hok", action="append", help="Hokkien corpus file (repeatable)")
    p.add_argument("--zh", action="append", help="Mandarin corpus file (repeatable)")
    p.add_argument("--mixed", action="append", help="rendered code-mixed corpus file (repeatable)")
    p.add_argument("--specials", help="comma-separated special tokens")
    p.add_argument("--base", help="existing vocabulary whose [unusedN] slots get replaced")
    p.add_argument("--new-chars", help="file of replacement characters")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_vocab)

    p = sub.add_parser("mask-preview", help="preview a masking plan over rendered tokens")
    p.add_argument("--vocab", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--base-p", dest="base_p", type=float)
    p.add_argument("--multiplier", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_mask_preview)

    p = sub.add_parser("manifest", help="emit a training-stage manifest")
    p.add_argument("--model", required=True, choices=modelprep.MODEL_NAMES)
    p.add_argument("--out")
    p.set_defaults(func=cmd_manifest)

    p = sub.add_parser("kappa", help="two-rater agreement kappa from label files")
    p.add_argument("--labels-a", required=True)
    p.add_argument("--labels-b", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_kappa)

    p = sub.add_parser("serve", help="run the annotation service")
    p.add_argument("--pool", required=True, help="code-mixed corpus JSONL to sample tasks from")
    p.add_argument("--sample", type=int, help="task pool size (default: whole corpus)")
    p.add_argument("--seed", type=int)
    p.add_argument("--annotators", required=True, help="comma-separated annotator ids")
    p.add_argument("--log", required=True, help="append-only record log path")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        conf = load_config(args.config)
        return args.func(args, conf)
    except (LexiconError, annotation.AnnotationError, synthesize.SwitchError,
            modelprep.VocabError, ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
