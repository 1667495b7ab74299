from .ingest import filter_max_words, load_audiocaps_csv, load_clotho_csv
from .manifest import load_manifest, write_manifest
from .model import (
    AudioBuffer,
    Caption,
    CaptionedClip,
    Corpus,
    VocabStats,
    vocab_cdf,
    vocab_stats,
)
from .porter import stem
from .text import ngrams, tokenize
from .wavio import probe_wav, read_wav, write_wav

__all__ = [
    "AudioBuffer",
    "Caption",
    "CaptionedClip",
    "Corpus",
    "VocabStats",
    "filter_max_words",
    "load_audiocaps_csv",
    "load_clotho_csv",
    "load_manifest",
    "ngrams",
    "probe_wav",
    "read_wav",
    "stem",
    "tokenize",
    "vocab_cdf",
    "vocab_stats",
    "write_manifest",
    "write_wav",
]
