"""METEOR-style unigram alignment score with exact and stem matching stages.

This is a two-stage variant: stage 1 aligns exact token matches, stage 2 aligns
leftover tokens by Porter stem. No synonym stage, so no lexical database is
needed; scores therefore differ from the reference METEOR implementation.
"""

from __future__ import annotations

from typing import Sequence

from ..corpus.porter import stem
from .bleu import _validate
from .score import MetricScore

Tokens = Sequence[str]


def _align(hyp: Tokens, ref: Tokens) -> list[tuple[int, int]]:
    """Greedy leftmost-first alignment; each token participates at most once."""
    hyp_used = [False] * len(hyp)
    ref_used = [False] * len(ref)
    pairs: list[tuple[int, int]] = []
    for match in (
        lambda h, r: h == r,
        lambda h, r: stem(h) == stem(r),
    ):
        for i, h_tok in enumerate(hyp):
            if hyp_used[i]:
                continue
            for j, r_tok in enumerate(ref):
                if not ref_used[j] and match(h_tok, r_tok):
                    hyp_used[i] = True
                    ref_used[j] = True
                    pairs.append((i, j))
                    break
    pairs.sort()
    return pairs


def _count_chunks(pairs: list[tuple[int, int]]) -> int:
    """Maximal runs of alignments that are contiguous in both sentences."""
    chunks = 0
    prev = None
    for i, j in pairs:
        if prev is None or i != prev[0] + 1 or j != prev[1] + 1:
            chunks += 1
        prev = (i, j)
    return chunks


def meteor_lite(
    hyp: Tokens,
    refs: Sequence[Tokens],
    alpha: float = 0.9,
    beta: float = 3.0,
    gamma: float = 0.5,
) -> MetricScore:
    _validate(hyp, refs)
    best_score = 0.0
    best = {"matches": 0.0, "chunks": 0.0, "penalty": 0.0, "f_mean": 0.0}
    for ref in refs:
        pairs = _align(hyp, ref)
        m = len(pairs)
        if m == 0:
            continue
        precision = m / len(hyp)
        recall = m / len(ref)
        f_mean = precision * recall / (alpha * precision + (1 - alpha) * recall)
        chunks = _count_chunks(pairs)
        penalty = gamma * (chunks / m) ** beta
        score = f_mean * (1 - penalty)
        if score > best_score:
            best_score = score
            best = {
                "matches": float(m),
                "chunks": float(chunks),
                "penalty": penalty,
                "f_mean": f_mean,
            }
    return MetricScore(value=best_score, components=best)
