"""Metric-suitability harness: how often does a metric score the harmless
(type-1) perturbation strictly above the harmful (type-2) one?"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from ..corpus.text import tokenize
from ..errors import BackendError, DataError
from ..metrics.cider import CorpusNgramStats, build_corpus_stats
from ..metrics.fense import FenseConfig, FluencyBackend, SimilarityBackend
from ..metrics.registry import make_scorer
from .generate import PerturbationPair


@dataclass(frozen=True)
class SuitabilityResult:
    metric: str
    kind: str
    n_pairs: int
    pct_type1_higher: float
    n_ties: int


def run_suitability(
    metric: str,
    pairs: Sequence[PerturbationPair],
    *,
    similarity_backend: SimilarityBackend | None = None,
    fluency_backend: FluencyBackend | None = None,
    stats: CorpusNgramStats | None = None,
    fense_config: FenseConfig | None = None,
) -> SuitabilityResult:
    """Score each pair's variants against its original; ties count as failures.

    For ciderd, IDF statistics default to the originals of the pair set.
    """
    if not pairs:
        raise ValueError("pair set must be non-empty")
    kinds = {p.kind for p in pairs}
    if len(kinds) != 1:
        raise ValueError(f"pair set mixes error kinds {sorted(kinds)}; run one kind at a time")
    if metric == "ciderd" and stats is None:
        stats = build_corpus_stats([tokenize(p.original.text) for p in pairs])
    scorer = make_scorer(
        metric,
        stats=stats,
        similarity_backend=similarity_backend,
        fluency_backend=fluency_backend,
        fense_config=fense_config,
    )
    higher = 0
    ties = 0
    for index, pair in enumerate(pairs):
        refs = [pair.original.text]
        try:
            s1 = scorer(pair.type1.text, refs).value
            s2 = scorer(pair.type2.text, refs).value
        except BackendError as exc:
            raise BackendError(f"pair {index}: {exc}") from exc
        except (ValueError, DataError) as exc:
            raise DataError(f"pair {index}: {exc}") from exc
        if s1 > s2:
            higher += 1
        elif s1 == s2:
            ties += 1
    return SuitabilityResult(
        metric=metric,
        kind=kinds.pop(),
        n_pairs=len(pairs),
        pct_type1_higher=100.0 * higher / len(pairs),
        n_ties=ties,
    )


REPORT_COLUMNS = ("metric", "kind", "n_pairs", "n_ties", "pct_type1_higher")


def emit_report(
    results: Sequence[SuitabilityResult],
    csv_path: str | Path,
    svg_path: str | Path | None = None,
) -> None:
    """Write the suitability table as CSV, optionally with a grouped bar chart."""
    if not results:
        raise ValueError("no suitability results to report")
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(REPORT_COLUMNS)
        for r in results:
            writer.writerow([r.metric, r.kind, r.n_pairs, r.n_ties, f"{r.pct_type1_higher:.4f}"])
    if svg_path is not None:
        from ..svgplot import emit_svg_bars

        rows = [(r.metric, r.kind, r.pct_type1_higher) for r in results]
        emit_svg_bars(rows, svg_path, y_max=100.0, y_label="% type-1 scored higher")


def read_report_csv(path: str | Path) -> list[SuitabilityResult]:
    results = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        missing = [c for c in REPORT_COLUMNS if reader.fieldnames is None or c not in reader.fieldnames]
        if missing:
            raise DataError(f"{path}: missing report columns {missing}")
        for row in reader:
            results.append(
                SuitabilityResult(
                    metric=row["metric"],
                    kind=row["kind"],
                    n_pairs=int(row["n_pairs"]),
                    pct_type1_higher=float(row["pct_type1_higher"]),
                    n_ties=int(row["n_ties"]),
                )
            )
    return results
