from .candidates import (
    KINDS,
    detect_verb,
    find_candidates,
    find_verb,
    is_semantic_candidate,
    is_spatial_candidate,
    is_temporal_candidate,
    iter_candidates,
)
from .generate import (
    PerturbationPair,
    item_seed,
    perturb_semantic,
    perturb_spatial,
    perturb_temporal,
    read_pairs_csv,
    sample_pairs,
    write_pairs_csv,
)
from .lexicon import VerbLexicon, default_lexicon, load_lexicon, parse_lexicon
from .suitability import SuitabilityResult, emit_report, read_report_csv, run_suitability

__all__ = [
    "KINDS",
    "PerturbationPair",
    "SuitabilityResult",
    "VerbLexicon",
    "default_lexicon",
    "detect_verb",
    "emit_report",
    "find_candidates",
    "find_verb",
    "is_semantic_candidate",
    "is_spatial_candidate",
    "is_temporal_candidate",
    "item_seed",
    "iter_candidates",
    "load_lexicon",
    "parse_lexicon",
    "perturb_semantic",
    "perturb_spatial",
    "perturb_temporal",
    "read_pairs_csv",
    "read_report_csv",
    "run_suitability",
    "sample_pairs",
    "write_pairs_csv",
]
