"""Vocabulary-imbalance analysis: token priors, log-prior class weights with a
capped maximum, the focal loss, and supporting gradients and sweeps.

Class weights follow omega_c = -a * log(p_c) with the scale a chosen so the
rarest class gets exactly the configured maximum weight (default 4). The focal
loss is -(1 - alpha)^gamma * log(alpha) on the ground-truth posterior alpha.
Natural logarithms are used throughout; the base only rescales a and cancels
in the weights.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .corpus.model import Corpus
from .corpus.text import tokenize
from .errors import DataError


@dataclass(frozen=True, eq=False)
class PriorDistribution:
    """Empirical class priors over a word list, with the source counts kept for
    export. Classes never observed are excluded rather than smoothed."""

    words: tuple[str, ...]
    p: np.ndarray
    counts: tuple[int, ...] | None = None

    def __post_init__(self):
        arr = np.asarray(self.p, dtype=np.float64)
        if arr.ndim != 1 or arr.size != len(self.words):
            raise ValueError("prior vector must align with the word list")
        if arr.size == 0:
            raise ValueError("prior distribution must be non-empty")
        if np.any(arr <= 0.0):
            raise ValueError("every prior must be strictly positive")
        if abs(float(arr.sum()) - 1.0) > 1e-12:
            raise ValueError(f"priors must sum to 1 (got {float(arr.sum())!r})")
        object.__setattr__(self, "p", arr)

    @classmethod
    def from_counts(cls, counts: dict[str, int]) -> "PriorDistribution":
        if not counts:
            raise ValueError("counts must be non-empty")
        if any(c <= 0 for c in counts.values()):
            raise ValueError("counts must be positive")
        words = tuple(sorted(counts, key=lambda w: (-counts[w], w)))
        totals = np.array([counts[w] for w in words], dtype=np.float64)
        return cls(words=words, p=totals / totals.sum(), counts=tuple(int(counts[w]) for w in words))


def token_prior(corpus: Corpus) -> PriorDistribution:
    """Word-level priors from the caption token counts of a corpus."""
    stats = corpus.vocab
    return PriorDistribution.from_counts(stats.counts)


def load_token_counts_csv(path: str | Path) -> dict[str, int]:
    """Read an external token-count table: CSV with columns token,count."""
    counts: dict[str, int] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"token", "count"} <= set(reader.fieldnames):
            raise DataError(f"{path}: expected columns token,count")
        for lineno, row in enumerate(reader, start=2):
            token = (row.get("token") or "").strip()
            if not token:
                raise DataError(f"{path}:{lineno}: empty token")
            if token in counts:
                raise DataError(f"{path}:{lineno}: duplicate token {token!r}")
            try:
                count = int(row["count"])
            except (TypeError, ValueError) as exc:
                raise DataError(f"{path}:{lineno}: non-integer count {row.get('count')!r}") from exc
            if count <= 0:
                raise DataError(f"{path}:{lineno}: count must be positive")
            counts[token] = count
    if not counts:
        raise DataError(f"{path}: no token counts found")
    return counts


@dataclass(frozen=True, eq=False)
class BalancedWeights:
    words: tuple[str, ...]
    omega: np.ndarray
    a: float
    w_max: float

    def __post_init__(self):
        arr = np.asarray(self.omega, dtype=np.float64)
        if np.any(arr < 0):
            raise ValueError("weights must be non-negative")
        if float(arr.max()) != self.w_max:
            raise ValueError("maximum weight must equal w_max exactly")
        object.__setattr__(self, "omega", arr)


def balanced_weights(prior: PriorDistribution, w_max: float = 4.0) -> BalancedWeights:
    """Log-prior class weights scaled so the rarest class weighs exactly w_max.

    omega_c = a * (-ln p_c) with a = w_max / max_c(-ln p_c). Rejects degenerate
    priors where some class has probability 1 (all -ln p would be 0 at the max).
    """
    if w_max <= 0:
        raise ValueError(f"w_max must be positive, got {w_max}")
    neglog = -np.log(prior.p)
    peak = float(neglog.max())
    if peak == 0.0:
        raise ValueError("degenerate prior: a class has probability 1, weights undefined")
    # Dividing by the peak first makes the maximum-weight entry exactly w_max.
    omega = w_max * (neglog / peak)
    return BalancedWeights(words=prior.words, omega=omega, a=w_max / peak, w_max=w_max)


@dataclass(frozen=True, eq=False)
class PosteriorVector:
    """Predicted class probabilities; entries in (0, 1], summing to 1."""

    alpha: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.alpha, dtype=np.float64)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("posterior must be a non-empty vector")
        if np.any(arr <= 0.0) or np.any(arr > 1.0):
            raise ValueError("posterior entries must lie in (0, 1]")
        if abs(float(arr.sum()) - 1.0) > 1e-9:
            raise ValueError(f"posterior must sum to 1 (got {float(arr.sum())!r})")
        object.__setattr__(self, "alpha", arr)


@dataclass(frozen=True)
class FocalConfig:
    gamma: float = 10.0

    def __post_init__(self):
        if not math.isfinite(self.gamma) or self.gamma < 0:
            raise ValueError(f"gamma must be finite and >= 0, got {self.gamma}")


def _target_probability(alpha: PosteriorVector, target: int) -> float:
    if not 0 <= target < alpha.alpha.size:
        raise IndexError(f"target {target} out of range for {alpha.alpha.size} classes")
    value = float(alpha.alpha[target])
    if value <= 0.0:
        raise ValueError("target posterior must be positive")
    return value


def cross_entropy(alpha: PosteriorVector, target: int) -> float:
    return -math.log(_target_probability(alpha, target))


def balanced_ce(alpha: PosteriorVector, target: int, weights: BalancedWeights) -> float:
    if weights.omega.size != alpha.alpha.size:
        raise ValueError("weight vector does not align with the posterior")
    return float(weights.omega[target]) * cross_entropy(alpha, target)


def focal(alpha: PosteriorVector, target: int, config: FocalConfig) -> float:
    a_t = _target_probability(alpha, target)
    return -((1.0 - a_t) ** config.gamma) * math.log(a_t)


def focal_grad(alpha_t: float, gamma: float) -> float:
    """d/d(alpha) of the focal loss at the target probability.

    gamma * (1-a)^(gamma-1) * ln(a) - (1-a)^gamma / a. The open interval (0, 1)
    is required; gamma < 1 is singular at the endpoints.
    """
    if not 0.0 < alpha_t < 1.0:
        raise ValueError(f"alpha_t must lie strictly inside (0, 1), got {alpha_t}")
    if gamma < 0:
        raise ValueError(f"gamma must be >= 0, got {gamma}")
    rest = 1.0 - alpha_t
    if gamma == 0.0:
        return -1.0 / alpha_t
    return gamma * rest ** (gamma - 1.0) * math.log(alpha_t) - rest**gamma / alpha_t


def output_vocab_size(generated_captions: Iterable[str]) -> int:
    """Distinct normalized tokens across a system's generated captions."""
    vocab: set[str] = set()
    for caption in generated_captions:
        vocab.update(tokenize(caption))
    return len(vocab)


def gamma_sweep_table(
    alphas: Sequence[float], gammas: Sequence[float]
) -> list[tuple[float, float, float]]:
    """Focal-loss values on a grid of (target probability, gamma) points.

    Rows are ordered gamma-major then alpha, each (alpha, gamma, loss).
    """
    if not gammas:
        raise ValueError("gamma list must be non-empty")
    if not alphas:
        raise ValueError("alpha grid must be non-empty")
    rows = []
    for gamma in gammas:
        config = FocalConfig(gamma=gamma)
        for a_t in alphas:
            if not 0.0 < a_t <= 1.0:
                raise ValueError(f"alpha values must lie in (0, 1], got {a_t}")
            loss = -((1.0 - a_t) ** config.gamma) * math.log(a_t)
            rows.append((float(a_t), float(gamma), loss))
    return rows


def export_weights_csv(
    prior: PriorDistribution, weights: BalancedWeights, path: str | Path
) -> None:
    """Write word,count,prior,weight rows sorted by descending weight."""
    order = sorted(
        range(len(prior.words)),
        key=lambda i: (-float(weights.omega[i]), prior.words[i]),
    )
    counts = prior.counts or tuple(0 for _ in prior.words)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["word", "count", "prior", "weight"])
        for i in order:
            writer.writerow(
                [
                    prior.words[i],
                    counts[i],
                    f"{float(prior.p[i]):.12g}",
                    f"{float(weights.omega[i]):.12g}",
                ]
            )
