"""Sentence-similarity caption scoring with an optional fluency penalty.

The similarity and fluency models are pluggable backends; a deterministic
lexical-cosine backend is provided so the full pipeline runs without any
model service attached.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Protocol, Sequence, runtime_checkable

from ..corpus.porter import stem
from ..corpus.text import tokenize
from .score import MetricScore

AGGREGATIONS = ("mean", "max")


@runtime_checkable
class SimilarityBackend(Protocol):
    def similarity(self, hypothesis: str, references: Sequence[str]) -> float: ...


@runtime_checkable
class FluencyBackend(Protocol):
    def error_probability(self, sentence: str) -> float: ...


@dataclass(frozen=True)
class FenseConfig:
    """Penalty threshold/magnitude and reference aggregation for fense scoring."""

    error_threshold: float = 0.9
    penalty_fraction: float = 0.9
    reference_aggregation: str = "mean"

    def __post_init__(self):
        if not 0.0 <= self.error_threshold <= 1.0:
            raise ValueError("error_threshold must lie in [0, 1]")
        if not 0.0 <= self.penalty_fraction <= 1.0:
            raise ValueError("penalty_fraction must lie in [0, 1]")
        if self.reference_aggregation not in AGGREGATIONS:
            raise ValueError(f"reference_aggregation must be one of {AGGREGATIONS}")


def _aggregate(values: Sequence[float], how: str) -> float:
    return max(values) if how == "max" else sum(values) / len(values)


class LexicalCosineBackend:
    """Cosine similarity of stemmed-unigram term-frequency vectors.

    A deterministic, dependency-free stand-in for a sentence-embedding model.
    Sentences with no tokens score 0 against everything.
    """

    def __init__(self, aggregation: str = "mean"):
        if aggregation not in AGGREGATIONS:
            raise ValueError(f"aggregation must be one of {AGGREGATIONS}")
        self.aggregation = aggregation

    @staticmethod
    def _vector(sentence: str) -> Counter:
        return Counter(stem(tok) for tok in tokenize(sentence))

    @classmethod
    def _cosine(cls, a: Counter, b: Counter) -> float:
        if not a or not b:
            return 0.0
        dot = sum(count * b[gram] for gram, count in a.items())
        # sqrt of the product keeps self-similarity at exactly 1.0
        norm = math.sqrt(
            sum(c * c for c in a.values()) * sum(c * c for c in b.values())
        )
        return dot / norm

    def similarity(self, hypothesis: str, references: Sequence[str]) -> float:
        if not references:
            raise ValueError("references must be non-empty")
        hyp_vec = self._vector(hypothesis)
        scores = [self._cosine(hyp_vec, self._vector(ref)) for ref in references]
        return _aggregate(scores, self.aggregation)


def fense_star(
    hypothesis: str,
    references: Sequence[str],
    backend: SimilarityBackend,
    config: FenseConfig | None = None,
) -> MetricScore:
    """Similarity-only score: backend similarity per reference, aggregated.

    Backend failures propagate as exceptions (never reported as a 0 score).
    """
    config = config or FenseConfig()
    if not references:
        raise ValueError("references must be non-empty")
    per_ref = [backend.similarity(hypothesis, [ref]) for ref in references]
    value = _aggregate(per_ref, config.reference_aggregation)
    components = {f"ref{i}": s for i, s in enumerate(per_ref)}
    return MetricScore(value=value, components=components)


def fense(
    hypothesis: str,
    references: Sequence[str],
    similarity_backend: SimilarityBackend,
    fluency_backend: FluencyBackend,
    config: FenseConfig | None = None,
) -> MetricScore:
    """fense_star scaled down by ``penalty_fraction`` when the fluency error
    probability strictly exceeds ``error_threshold``."""
    config = config or FenseConfig()
    star = fense_star(hypothesis, references, similarity_backend, config)
    error_probability = fluency_backend.error_probability(hypothesis)
    penalized = error_probability > config.error_threshold
    value = star.value * (1.0 - config.penalty_fraction) if penalized else star.value
    components = {
        "similarity": star.value,
        "error_probability": error_probability,
        "penalty_applied": 1.0 if penalized else 0.0,
    }
    return MetricScore(value=value, components=components)
