"""Sentence-level BLEU with clipped n-gram precisions and brevity penalty.

No smoothing is applied: a zero precision at any order zeroes the score.
"""

from __future__ import annotations

import math
from collections import Counter
from typing import Sequence

from ..corpus.text import ngrams
from .score import MetricScore

Tokens = Sequence[str]


def _validate(hyp: Tokens, refs: Sequence[Tokens]) -> None:
    if not hyp:
        raise ValueError("hypothesis must be non-empty")
    if not refs or any(not r for r in refs):
        raise ValueError("reference set must be non-empty, with non-empty references")


def bleu(hyp: Tokens, refs: Sequence[Tokens], max_order: int = 4) -> MetricScore:
    """BLEU-N of ``hyp`` against ``refs``.

    Modified precision at each order clips hypothesis n-gram counts to the
    per-gram maximum across references. The brevity penalty uses the reference
    length closest to the hypothesis length (ties broken toward the shorter).
    """
    if max_order < 1:
        raise ValueError(f"max n-gram order must be >= 1, got {max_order}")
    _validate(hyp, refs)

    c = len(hyp)
    precisions: list[float] = []
    for n in range(1, max_order + 1):
        hyp_counts = ngrams(hyp, n)
        total = sum(hyp_counts.values())
        if total == 0:
            precisions.append(0.0)
            continue
        max_ref: Counter = Counter()
        for ref in refs:
            for gram, count in ngrams(ref, n).items():
                if count > max_ref[gram]:
                    max_ref[gram] = count
        clipped = sum(min(count, max_ref[gram]) for gram, count in hyp_counts.items())
        precisions.append(clipped / total)

    r = min((len(ref) for ref in refs), key=lambda length: (abs(length - c), length))
    bp = min(1.0, math.exp(1.0 - r / c))

    if all(p > 0 for p in precisions):
        log_mean = sum(math.log(p) for p in precisions) / max_order
        value = bp * math.exp(log_mean)
    else:
        value = 0.0

    components = {f"p{n}": p for n, p in enumerate(precisions, start=1)}
    components["brevity_penalty"] = bp
    components["hyp_len"] = float(c)
    components["ref_len"] = float(r)
    return MetricScore(value=value, components=components)
