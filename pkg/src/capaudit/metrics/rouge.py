"""ROUGE-L: longest-common-subsequence F-measure, max over references."""

from __future__ import annotations

from typing import Sequence

from .bleu import _validate
from .score import MetricScore

Tokens = Sequence[str]


def lcs_length(a: Tokens, b: Tokens) -> int:
    """Length of the longest common subsequence of two token lists."""
    if not a or not b:
        return 0
    # One-row dynamic program over the shorter sequence.
    if len(b) > len(a):
        a, b = b, a
    prev = [0] * (len(b) + 1)
    for x in a:
        curr = [0]
        for j, y in enumerate(b, start=1):
            if x == y:
                curr.append(prev[j - 1] + 1)
            else:
                curr.append(max(prev[j], curr[j - 1]))
        prev = curr
    return prev[-1]


def rouge_l(hyp: Tokens, refs: Sequence[Tokens], beta: float = 1.2) -> MetricScore:
    _validate(hyp, refs)
    beta_sq = beta * beta
    best_f = 0.0
    best = {"lcs": 0.0, "precision": 0.0, "recall": 0.0}
    for ref in refs:
        lcs = lcs_length(hyp, ref)
        if lcs == 0:
            continue
        precision = lcs / len(hyp)
        recall = lcs / len(ref)
        f = (1 + beta_sq) * precision * recall / (recall + beta_sq * precision)
        if f > best_f:
            best_f = f
            best = {"lcs": float(lcs), "precision": precision, "recall": recall}
    return MetricScore(value=best_f, components=best)
