"""Command-line interface.

Subcommands cover corpus ingestion, vocabulary reports, perturbation-pair
generation, metric scoring, suitability benchmarking, audio augmentation, and
loss-weight analysis. Every run prints one summary line carrying the seed and
short digests of its inputs, and removes partial outputs on failure.

Exit codes: 0 success, 1 usage error, 2 data/format error, 3 backend error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import os
import sys
from pathlib import Path

from .augment import augment_dataset
from .corpus.ingest import filter_max_words, load_audiocaps_csv, load_clotho_csv
from .corpus.manifest import load_manifest, write_manifest
from .corpus.model import vocab_cdf, vocab_stats
from .corpus.text import tokenize
from .errors import BackendError, DataError, UsageError
from .loss import (
    PriorDistribution,
    balanced_weights,
    export_weights_csv,
    gamma_sweep_table,
    load_token_counts_csv,
    token_prior,
)
from .metrics.cider import build_corpus_stats
from .metrics.fense import FenseConfig, LexicalCosineBackend
from .metrics.registry import METRIC_NAMES, make_scorer
from .metrics.remote import RemoteScorerBackend
from .perturb.candidates import KINDS
from .perturb.generate import read_pairs_csv, sample_pairs, write_pairs_csv
from .perturb.lexicon import default_lexicon, load_lexicon
from .perturb.suitability import emit_report, run_suitability
from .svgplot import emit_svg_bars, emit_svg_cdf

DEFAULT_SEED = 42


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class _Outputs:
    """Tracks files written by a command so failures leave nothing partial."""

    def __init__(self):
        self.paths: list[Path] = []

    def register(self, path: str | Path) -> Path:
        p = Path(path)
        self.paths.append(p)
        return p

    def register_glob(self, directory: Path, pattern: str) -> None:
        self.paths.extend(sorted(directory.glob(pattern)))

    def purge(self) -> None:
        for p in self.paths:
            try:
                if p.is_file():
                    p.unlink()
            except OSError:
                pass


def _digest(path: str | Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()[:8]


def _summary(command: str, inputs: list[str], outputs: list[str], **meta) -> str:
    parts = [f"capaudit {command}"]
    for key, value in meta.items():
        parts.append(f"{key}={value}")
    digests = ",".join(f"{Path(p).name}:{_digest(p)}" for p in inputs if Path(p).is_file())
    parts.append(f"inputs={digests or '-'}")
    parts.append(f"outputs={','.join(outputs) or '-'}")
    parts.append("status=ok")
    return " ".join(parts)


def _parse_metrics(value: str) -> list[str]:
    names = [m.strip() for m in value.split(",") if m.strip()]
    if not names:
        raise UsageError("no metrics given")
    for name in names:
        if name not in METRIC_NAMES:
            raise UsageError(f"unknown metric {name!r}; expected one of {METRIC_NAMES}")
    return names


def _make_backends(spec: str):
    """Return (similarity_backend, fluency_backend_or_None) for a backend flag."""
    if spec == "lexical":
        return LexicalCosineBackend(), None
    if spec.startswith("remote:"):
        backend = RemoteScorerBackend(spec[len("remote:") :])
        backend.check_health()
        return backend, backend
    raise UsageError(f"backend must be 'lexical' or 'remote:URL', got {spec!r}")


# ---------------------------------------------------------------- commands


def _cmd_ingest(args, outputs: _Outputs) -> str:
    if args.format in ("clotho", "audiocaps") and not args.audio_dir:
        raise UsageError(f"--audio-dir is required for format {args.format}")
    if args.format == "clotho":
        corpus = load_clotho_csv(args.csv, args.audio_dir)
    elif args.format == "audiocaps":
        corpus = load_audiocaps_csv(args.csv, args.audio_dir)
        if args.max_words:
            corpus = filter_max_words(corpus, args.max_words)
    else:
        corpus = load_manifest(args.csv)
    out = outputs.register(args.out)
    write_manifest(corpus, out)
    return _summary("ingest", [args.csv], [str(out)], format=args.format, items=len(corpus))


def _cmd_vocab(args, outputs: _Outputs) -> str:
    corpus = load_manifest(args.manifest)
    stats = vocab_stats(corpus)
    cdf = vocab_cdf(stats)
    out = outputs.register(args.out_csv)
    with open(out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["rank", "word", "count", "cumulative_probability"])
        for rank, word in enumerate(stats.ranked, start=1):
            writer.writerow([rank, word, stats.counts[word], f"{cdf[rank - 1]:.10g}"])
    written = [str(out)]
    if args.svg:
        svg = outputs.register(args.svg)
        emit_svg_cdf(cdf, svg)
        written.append(str(svg))
    return _summary(
        "vocab", [args.manifest], written,
        distinct_words=len(stats.ranked), total_tokens=stats.total_tokens,
    )


def _cmd_perturb(args, outputs: _Outputs) -> str:
    corpus = load_manifest(args.manifest)
    lexicon = load_lexicon(args.lexicon) if args.lexicon else default_lexicon()
    pairs = sample_pairs(
        corpus, args.kind, n=args.n, seed=args.seed, lexicon=lexicon, jobs=args.jobs
    )
    out = outputs.register(args.out)
    write_pairs_csv(pairs, out)
    inputs = [args.manifest] + ([args.lexicon] if args.lexicon else [])
    return _summary(
        "perturb", inputs, [str(out)],
        kind=args.kind, n=len(pairs), seed=args.seed, jobs=args.jobs,
    )


def _score_rows(args, similarity_backend, fluency_backend):
    config = FenseConfig()
    if args.pairs:
        pairs = read_pairs_csv(args.pairs)
        if not pairs:
            raise DataError(f"{args.pairs}: no pairs found")
        stats = build_corpus_stats([tokenize(p.original.text) for p in pairs])
        rows = []
        for metric in args.metric_names:
            scorer = make_scorer(
                metric,
                stats=stats,
                similarity_backend=similarity_backend,
                fluency_backend=fluency_backend,
                fense_config=config,
            )
            for pair in pairs:
                refs = [pair.original.text]
                pair_id = pair.meta.get("candidate_id", "")
                for variant, caption in (("type1", pair.type1), ("type2", pair.type2)):
                    rows.append(
                        [pair_id, pair.kind, variant, metric,
                         f"{scorer(caption.text, refs).value:.10g}"]
                    )
        return ["id", "kind", "variant", "metric", "value"], rows
    refs = args.refs
    stats = build_corpus_stats([tokenize(r) for r in refs])
    rows = []
    for metric in args.metric_names:
        scorer = make_scorer(
            metric,
            stats=stats,
            similarity_backend=similarity_backend,
            fluency_backend=fluency_backend,
            fense_config=config,
        )
        rows.append([metric, f"{scorer(args.hyp, refs).value:.10g}"])
    return ["metric", "value"], rows


def _cmd_score(args, outputs: _Outputs) -> str:
    args.metric_names = _parse_metrics(args.metrics)
    if bool(args.pairs) == bool(args.hyp):
        raise UsageError("exactly one of --pairs or --hyp must be given")
    if args.hyp and not args.refs:
        raise UsageError("--hyp requires at least one --refs")
    similarity_backend, fluency_backend = _make_backends(args.backend)
    if "fense" in args.metric_names and fluency_backend is None:
        raise UsageError("metric 'fense' needs a fluency-capable backend (remote:URL)")
    header, rows = _score_rows(args, similarity_backend, fluency_backend)
    written = []
    if args.out:
        out = outputs.register(args.out)
        with open(out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            writer.writerows(rows)
        written.append(str(out))
    else:
        for row in rows:
            print(",".join(str(v) for v in row))
    inputs = [args.pairs] if args.pairs else []
    return _summary(
        "score", inputs, written, metrics=",".join(args.metric_names), backend=args.backend
    )


def _cmd_suitability(args, outputs: _Outputs) -> str:
    args.metric_names = _parse_metrics(args.metrics)
    similarity_backend, fluency_backend = _make_backends(args.backend)
    if "fense" in args.metric_names and fluency_backend is None:
        raise UsageError("metric 'fense' needs a fluency-capable backend (remote:URL)")
    pairs = read_pairs_csv(args.pairs)
    if not pairs:
        raise DataError(f"{args.pairs}: no pairs found")
    kinds = sorted({p.kind for p in pairs})
    results = []
    for metric in args.metric_names:
        for kind in kinds:
            subset = [p for p in pairs if p.kind == kind]
            results.append(
                run_suitability(
                    metric,
                    subset,
                    similarity_backend=similarity_backend,
                    fluency_backend=fluency_backend,
                )
            )
    out = outputs.register(args.out_csv)
    svg = outputs.register(args.svg) if args.svg else None
    emit_report(results, out, svg)
    written = [str(out)] + ([str(svg)] if svg else [])
    return _summary(
        "suitability", [args.pairs], written,
        metrics=",".join(args.metric_names), kinds=",".join(kinds), backend=args.backend,
    )


def _cmd_augment(args, outputs: _Outputs) -> str:
    clotho = load_manifest(args.clotho)
    audiocaps = filter_max_words(load_manifest(args.audiocaps), args.max_words)
    if not audiocaps.items:
        raise DataError("no AudioCaps items left after the short-caption filter")
    out_dir = Path(args.out_dir)
    try:
        corpus = augment_dataset(
            clotho, audiocaps, args.method, args.count, args.seed, out_dir, jobs=args.jobs
        )
    except Exception:
        if out_dir.is_dir():
            outputs.register_glob(out_dir, f"{args.method}_*.wav")
            outputs.register(out_dir / "manifest.jsonl")
        raise
    return _summary(
        "augment", [args.clotho, args.audiocaps],
        [str(out_dir / "manifest.jsonl"), f"{len(corpus)} wav files"],
        method=args.method, count=args.count, seed=args.seed, jobs=args.jobs,
    )


def _cmd_loss_weights(args, outputs: _Outputs) -> str:
    if bool(args.counts) == bool(args.manifest):
        raise UsageError("exactly one of --counts or --manifest must be given")
    if args.counts:
        prior = PriorDistribution.from_counts(load_token_counts_csv(args.counts))
        source = args.counts
    else:
        prior = token_prior(load_manifest(args.manifest))
        source = args.manifest
    weights = balanced_weights(prior, w_max=args.max_weight)
    out = outputs.register(args.out_csv)
    export_weights_csv(prior, weights, out)
    return _summary(
        "loss-weights", [source], [str(out)],
        classes=len(prior.words), max_weight=args.max_weight, scale=f"{weights.a:.6g}",
    )


def _parse_alpha_grid(value: str) -> list[float]:
    if ":" in value:
        try:
            start, stop, num = value.split(":")
            start_f, stop_f, num_i = float(start), float(stop), int(num)
        except ValueError as exc:
            raise UsageError(f"bad alpha grid {value!r}; use start:stop:count") from exc
        if num_i < 2 or not (0.0 < start_f <= stop_f <= 1.0):
            raise UsageError(f"bad alpha grid {value!r}")
        step = (stop_f - start_f) / (num_i - 1)
        return [start_f + i * step for i in range(num_i)]
    try:
        values = [float(v) for v in value.split(",") if v.strip()]
    except ValueError as exc:
        raise UsageError(f"bad alpha grid {value!r}") from exc
    if not values:
        raise UsageError("empty alpha grid")
    return values


def _cmd_loss_eval(args, outputs: _Outputs) -> str:
    try:
        gammas = [float(g) for g in args.gamma_list.split(",") if g.strip()]
    except ValueError as exc:
        raise UsageError(f"bad gamma list {args.gamma_list!r}") from exc
    alphas = _parse_alpha_grid(args.alpha_grid)
    try:
        rows = gamma_sweep_table(alphas, gammas)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    out = outputs.register(args.out_csv)
    with open(out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["alpha", "gamma", "loss"])
        for alpha, gamma, loss in rows:
            writer.writerow([f"{alpha:.10g}", f"{gamma:.10g}", f"{loss:.12g}"])
    return _summary(
        "loss-eval", [], [str(out)], gammas=args.gamma_list, points=len(rows)
    )


# ---------------------------------------------------------------- parser


def build_parser() -> _Parser:
    parser = _Parser(prog="capaudit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="convert a captions CSV (or manifest) to a manifest")
    p.add_argument("--format", required=True, choices=("clotho", "audiocaps", "manifest"))
    p.add_argument("--csv", required=True, help="input CSV (or manifest) path")
    p.add_argument("--audio-dir", default=None, help="directory holding the audio files")
    p.add_argument("--max-words", type=int, default=0,
                   help="for audiocaps: drop items with captions longer than this")
    p.add_argument("--out", required=True, help="output manifest path")
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("vocab", help="vocabulary counts and coverage CDF")
    p.add_argument("--manifest", required=True)
    p.add_argument("--out-csv", required=True)
    p.add_argument("--svg", default=None, help="optional CDF chart path")
    p.set_defaults(func=_cmd_vocab)

    p = sub.add_parser("perturb", help="generate type-1/type-2 perturbation pairs")
    p.add_argument("--manifest", required=True)
    p.add_argument("--kind", required=True, choices=KINDS)
    p.add_argument("--n", type=int, default=1500)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--lexicon", default=None, help="verb word-list file (default: built-in)")
    p.add_argument("--out", required=True, help="output pairs CSV")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.set_defaults(func=_cmd_perturb)

    p = sub.add_parser("score", help="score hypotheses against references")
    p.add_argument("--pairs", default=None, help="perturbation pairs CSV to score")
    p.add_argument("--hyp", default=None, help="a single hypothesis caption")
    p.add_argument("--refs", action="append", default=[], help="reference caption (repeatable)")
    p.add_argument("--metrics", required=True, help="comma-separated metric names")
    p.add_argument("--backend", default="lexical", help="'lexical' or 'remote:URL'")
    p.add_argument("--out", default=None, help="output CSV (default: print to stdout)")
    p.set_defaults(func=_cmd_score)

    p = sub.add_parser("suitability", help="percentage of pairs scoring type-1 above type-2")
    p.add_argument("--pairs", required=True)
    p.add_argument("--metrics", required=True)
    p.add_argument("--backend", default="lexical")
    p.add_argument("--out-csv", required=True)
    p.add_argument("--svg", default=None)
    p.set_defaults(func=_cmd_suitability)

    p = sub.add_parser("augment", help="generate concatenation or mixing augmentations")
    p.add_argument("--method", required=True, choices=("concat", "mixing"))
    p.add_argument("--clotho", required=True, help="five-caption corpus manifest")
    p.add_argument("--audiocaps", required=True, help="single-caption corpus manifest")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--max-words", type=int, default=8,
                   help="short-caption filter applied to the audiocaps corpus")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.set_defaults(func=_cmd_augment)

    p = sub.add_parser("loss-weights", help="log-prior class weights with a capped maximum")
    p.add_argument("--counts", default=None, help="token,count CSV")
    p.add_argument("--manifest", default=None, help="corpus manifest to count tokens from")
    p.add_argument("--max-weight", type=float, default=4.0)
    p.add_argument("--out-csv", required=True)
    p.set_defaults(func=_cmd_loss_weights)

    p = sub.add_parser("loss-eval", help="focal-loss table over an (alpha, gamma) grid")
    p.add_argument("--gamma-list", required=True, help="comma-separated gamma values")
    p.add_argument("--alpha-grid", required=True,
                   help="comma-separated alphas or start:stop:count")
    p.add_argument("--out-csv", required=True)
    p.set_defaults(func=_cmd_loss_eval)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    outputs = _Outputs()
    try:
        args = parser.parse_args(argv)
        print(args.func(args, outputs))
        return 0
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        outputs.purge()
        return 1
    except BackendError as exc:
        print(f"backend error: {exc}", file=sys.stderr)
        outputs.purge()
        return 3
    except (DataError, ValueError, OSError, KeyError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        outputs.purge()
        return 2


def entrypoint() -> None:
    sys.exit(main())
