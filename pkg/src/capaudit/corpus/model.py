"""Data model for captioned audio corpora and their vocabulary statistics."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .text import tokenize

SOURCES = ("clotho", "audiocaps", "augmented")

# Captions per clip, by source. Clotho provides five annotations per clip,
# AudioCaps a single one; augmented items carry the one synthesized caption.
_CAPTIONS_BY_SOURCE = {"clotho": (5, 5), "audiocaps": (1, 1), "augmented": (1, 5)}


@dataclass(frozen=True)
class Caption:
    """A caption string together with its normalized token sequence."""

    text: str
    tokens: tuple[str, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if not self.text or not self.text.strip():
            raise ValueError("caption text must be non-empty")
        toks = tuple(tokenize(self.text))
        if not toks:
            raise ValueError(f"caption normalizes to no tokens: {self.text!r}")
        object.__setattr__(self, "tokens", toks)


@dataclass(frozen=True, eq=False)
class AudioBuffer:
    """Mono audio as float amplitudes in [-1, 1] at a fixed sample rate."""

    samples: np.ndarray
    sample_rate: int

    def __post_init__(self):
        arr = np.asarray(self.samples, dtype=np.float64)
        if arr.ndim != 1:
            raise ValueError(f"samples must be 1-D (mono), got shape {arr.shape}")
        if arr.size and float(np.max(np.abs(arr))) > 1.0:
            raise ValueError("samples must lie within [-1.0, +1.0]")
        if not isinstance(self.sample_rate, int) or self.sample_rate <= 0:
            raise ValueError(f"sample_rate must be a positive integer, got {self.sample_rate!r}")
        object.__setattr__(self, "samples", arr)

    def __len__(self) -> int:
        return int(self.samples.size)

    @property
    def duration_s(self) -> float:
        return self.samples.size / self.sample_rate


@dataclass
class CaptionedClip:
    """One audio file plus its reference captions and provenance."""

    id: str
    audio_path: str
    captions: list[Caption]
    source: str
    sample_rate: int
    duration_s: float
    provenance: dict | None = None

    def __post_init__(self):
        if not self.id:
            raise ValueError("clip id must be non-empty")
        if self.source not in SOURCES:
            raise ValueError(f"unknown source {self.source!r}; expected one of {SOURCES}")
        lo, hi = _CAPTIONS_BY_SOURCE[self.source]
        n = len(self.captions)
        if not lo <= n <= hi:
            raise ValueError(
                f"{self.source} clip {self.id!r} has {n} captions; expected between {lo} and {hi}"
            )
        if self.sample_rate <= 0:
            raise ValueError("sample_rate must be positive")


@dataclass
class VocabStats:
    """Word occurrence counts with a deterministic frequency ranking."""

    counts: dict[str, int]
    total_tokens: int
    ranked: list[str]

    @classmethod
    def from_counts(cls, counts: Counter | dict[str, int]) -> "VocabStats":
        counts = dict(counts)
        total = sum(counts.values())
        # Ties in count are broken lexicographically so the ranking is stable.
        ranked = sorted(counts, key=lambda w: (-counts[w], w))
        return cls(counts=counts, total_tokens=total, ranked=ranked)


@dataclass
class Corpus:
    """A set of captioned clips with unique ids."""

    items: list[CaptionedClip]

    def __post_init__(self):
        seen = set()
        for item in self.items:
            if item.id in seen:
                raise ValueError(f"duplicate clip id {item.id!r} in corpus")
            seen.add(item.id)

    def __len__(self) -> int:
        return len(self.items)

    def by_id(self, clip_id: str) -> CaptionedClip:
        for item in self.items:
            if item.id == clip_id:
                return item
        raise KeyError(clip_id)

    @cached_property
    def vocab(self) -> VocabStats:
        return vocab_stats(self)


def vocab_stats(corpus: Corpus) -> VocabStats:
    """Word counts over the normalized tokens of every caption in the corpus."""
    if not corpus.items:
        raise ValueError("cannot compute vocabulary statistics of an empty corpus")
    counts: Counter = Counter()
    for item in corpus.items:
        for cap in item.captions:
            counts.update(cap.tokens)
    return VocabStats.from_counts(counts)


def vocab_cdf(stats: VocabStats) -> list[float]:
    """Cumulative probability covered by the top-(i+1) ranked words, for each i.

    The final entry is exactly 1.0 (integer cumulative counts are divided by the
    integer total, so no floating-point drift accumulates).
    """
    if stats.total_tokens <= 0:
        raise ValueError("total_tokens must be positive")
    cdf = []
    running = 0
    for word in stats.ranked:
        running += stats.counts[word]
        cdf.append(running / stats.total_tokens)
    return cdf
