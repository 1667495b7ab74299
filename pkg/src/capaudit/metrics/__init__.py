from .bleu import bleu
from .cider import CorpusNgramStats, build_corpus_stats, cider_d
from .fense import (
    FenseConfig,
    FluencyBackend,
    LexicalCosineBackend,
    SimilarityBackend,
    fense,
    fense_star,
)
from .meteor import meteor_lite
from .registry import METRIC_NAMES, Scorer, make_scorer, score_pairs
from .remote import RemoteScorerBackend
from .rouge import lcs_length, rouge_l
from .score import MetricScore

__all__ = [
    "CorpusNgramStats",
    "FenseConfig",
    "FluencyBackend",
    "LexicalCosineBackend",
    "METRIC_NAMES",
    "MetricScore",
    "RemoteScorerBackend",
    "Scorer",
    "SimilarityBackend",
    "bleu",
    "build_corpus_stats",
    "cider_d",
    "fense",
    "fense_star",
    "lcs_length",
    "make_scorer",
    "meteor_lite",
    "rouge_l",
    "score_pairs",
]
