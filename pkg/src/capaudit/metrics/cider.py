"""CIDEr-D: TF-IDF n-gram cosine consensus with count clipping and a Gaussian
length penalty, scaled to [0, 10]."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from ..corpus.text import ngrams
from .bleu import _validate
from .score import MetricScore

Tokens = Sequence[str]


@dataclass
class CorpusNgramStats:
    """Document frequencies per n-gram order over a reference pool."""

    doc_freq: dict[int, dict[tuple, int]]
    num_docs: int

    def idf(self, order: int, gram: tuple) -> float:
        # Unseen n-grams are treated as occurring in a single document.
        df = self.doc_freq.get(order, {}).get(gram, 1)
        return math.log(self.num_docs / df)


def build_corpus_stats(documents: Sequence[Tokens], max_order: int = 4) -> CorpusNgramStats:
    """Count, per order, how many documents contain each n-gram."""
    if not documents:
        raise ValueError("reference corpus must contain at least one document")
    doc_freq: dict[int, dict[tuple, int]] = {n: {} for n in range(1, max_order + 1)}
    for doc in documents:
        for n in range(1, max_order + 1):
            for gram in set(ngrams(doc, n)):
                doc_freq[n][gram] = doc_freq[n].get(gram, 0) + 1
    return CorpusNgramStats(doc_freq=doc_freq, num_docs=len(documents))


def _tfidf_vector(tokens: Tokens, n: int, stats: CorpusNgramStats) -> dict[tuple, float]:
    return {gram: count * stats.idf(n, gram) for gram, count in ngrams(tokens, n).items()}


def _sq_norm(vec: dict[tuple, float]) -> float:
    return sum(v * v for v in vec.values())


def cider_d(
    hyp: Tokens,
    refs: Sequence[Tokens],
    stats: CorpusNgramStats,
    max_order: int = 4,
    sigma: float = 6.0,
    scale: float = 10.0,
) -> MetricScore:
    """CIDEr-D of ``hyp`` against ``refs`` using IDF from ``stats``.

    Per order: hypothesis TF-IDF weights are clipped to the per-reference
    weight before the dot product; zero-norm or empty vectors contribute 0.
    The per-reference similarity carries the exp(-(len difference)^2 / 2 sigma^2)
    penalty. The score averages over orders, then references, times ``scale``.
    """
    _validate(hyp, refs)
    if stats.num_docs < 1:
        raise ValueError("corpus stats must cover at least one document")

    per_order: list[float] = []
    for n in range(1, max_order + 1):
        hyp_vec = _tfidf_vector(hyp, n, stats)
        hyp_sq = _sq_norm(hyp_vec)
        total = 0.0
        for ref in refs:
            ref_vec = _tfidf_vector(ref, n, stats)
            ref_sq = _sq_norm(ref_vec)
            if hyp_sq == 0.0 or ref_sq == 0.0:
                continue
            dot = sum(
                min(weight, ref_vec[gram]) * ref_vec[gram]
                for gram, weight in hyp_vec.items()
                if gram in ref_vec
            )
            # sqrt of the product (not product of sqrts) keeps the identity
            # case at exactly 1.0.
            delta = len(hyp) - len(ref)
            total += (dot / math.sqrt(hyp_sq * ref_sq)) * math.exp(
                -(delta * delta) / (2.0 * sigma * sigma)
            )
        per_order.append(total / len(refs))

    value = scale * sum(per_order) / max_order
    components = {f"sim{n}": s for n, s in enumerate(per_order, start=1)}
    return MetricScore(value=value, components=components)
