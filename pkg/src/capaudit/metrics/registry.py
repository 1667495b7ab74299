"""Metric selection by name, plus batch scoring of (hypothesis, references) pairs."""

from __future__ import annotations

import re
from typing import Callable, Sequence

from ..corpus.text import tokenize
from ..errors import BackendError, DataError, UsageError
from .bleu import bleu
from .cider import CorpusNgramStats, cider_d
from .fense import FenseConfig, FluencyBackend, SimilarityBackend, fense, fense_star
from .meteor import meteor_lite
from .rouge import rouge_l
from .score import MetricScore

# A scorer maps a raw hypothesis string and raw reference strings to a score.
Scorer = Callable[[str, Sequence[str]], MetricScore]

METRIC_NAMES = ("bleu1", "bleu2", "bleu3", "bleu4", "rougel", "meteor", "ciderd",
                "fense_star", "fense")

_BLEU_RE = re.compile(r"^bleu([1-9])$")


def make_scorer(
    name: str,
    *,
    stats: CorpusNgramStats | None = None,
    similarity_backend: SimilarityBackend | None = None,
    fluency_backend: FluencyBackend | None = None,
    fense_config: FenseConfig | None = None,
) -> Scorer:
    """Build a scorer for a metric name.

    ``ciderd`` requires ``stats`` built over the evaluation's reference pool;
    ``fense_star`` requires a similarity backend; ``fense`` additionally
    requires a fluency backend.
    """
    m = _BLEU_RE.match(name)
    if m:
        order = int(m.group(1))
        return lambda hyp, refs: bleu(tokenize(hyp), [tokenize(r) for r in refs], order)
    if name == "rougel":
        return lambda hyp, refs: rouge_l(tokenize(hyp), [tokenize(r) for r in refs])
    if name == "meteor":
        return lambda hyp, refs: meteor_lite(tokenize(hyp), [tokenize(r) for r in refs])
    if name == "ciderd":
        if stats is None:
            raise UsageError("ciderd requires corpus n-gram stats over the reference pool")
        return lambda hyp, refs: cider_d(tokenize(hyp), [tokenize(r) for r in refs], stats)
    if name == "fense_star":
        if similarity_backend is None:
            raise UsageError("fense_star requires a similarity backend")
        return lambda hyp, refs: fense_star(hyp, refs, similarity_backend, fense_config)
    if name == "fense":
        if similarity_backend is None or fluency_backend is None:
            raise UsageError("fense requires similarity and fluency backends")
        return lambda hyp, refs: fense(
            hyp, refs, similarity_backend, fluency_backend, fense_config
        )
    raise UsageError(f"unknown metric {name!r}; expected one of {METRIC_NAMES}")


def score_pairs(
    scorer: Scorer, pairs: Sequence[tuple[str, Sequence[str]]]
) -> tuple[list[MetricScore], float]:
    """Score each (hypothesis, references) pair; return per-item scores and mean.

    The first failing item aborts scoring with its index attached; backend
    failures stay distinguishable from data failures.
    """
    if not pairs:
        raise ValueError("cannot score an empty pair list")
    scores: list[MetricScore] = []
    for index, (hyp, refs) in enumerate(pairs):
        try:
            scores.append(scorer(hyp, refs))
        except BackendError as exc:
            raise BackendError(f"item {index}: {exc}") from exc
        except (ValueError, DataError) as exc:
            raise DataError(f"item {index}: {exc}") from exc
    mean = sum(s.value for s in scores) / len(scores)
    return scores, mean
