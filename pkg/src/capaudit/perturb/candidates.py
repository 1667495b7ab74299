"""Selection of captions that fit the structural pattern of one error kind.

All matching runs on the normalized token stream, so keyword casing and
punctuation in the raw caption are irrelevant.
"""

from __future__ import annotations

from typing import Sequence

from ..corpus.model import Caption, Corpus
from .lexicon import VerbLexicon

KINDS = ("semantic", "temporal", "spatial")

TEMPORAL_KEYWORDS = (("followed", "by"), ("and", "then"))
SPATIAL_MARKERS = (("in", "the", "background"), ("in", "the", "foreground"))
SPATIAL_CONNECTORS = ("and", "while", "as")

Tokens = tuple[str, ...]


def phrase_occurrences(tokens: Sequence[str], phrase: Sequence[str]) -> list[int]:
    """Start indices of every (possibly overlapping) occurrence of ``phrase``."""
    k = len(phrase)
    return [
        i
        for i in range(len(tokens) - k + 1)
        if tuple(tokens[i : i + k]) == tuple(phrase)
    ]


def _occurrences_of_any(tokens: Sequence[str], phrases) -> list[tuple[int, Tokens]]:
    found = []
    for phrase in phrases:
        for start in phrase_occurrences(tokens, phrase):
            found.append((start, tuple(phrase)))
    found.sort()
    return found


def find_verb(clause: Sequence[str], lexicon: VerbLexicon) -> int | None:
    """Index of the clause's verb, or None.

    First token found in the lexicon wins; otherwise the first token longer
    than 3 characters ending in "ing" or "s" (a crude inflection heuristic).
    """
    for i, token in enumerate(clause):
        if token in lexicon:
            return i
    for i, token in enumerate(clause):
        if len(token) > 3 and (token.endswith("ing") or token.endswith("s")):
            return i
    return None


def detect_verb(clause: Sequence[str], lexicon: VerbLexicon) -> int:
    """Like find_verb, but a missing verb is an error."""
    if not clause:
        raise ValueError("clause must be non-empty")
    index = find_verb(clause, lexicon)
    if index is None:
        raise ValueError(f"no detectable verb in clause {list(clause)!r}")
    return index


def is_semantic_candidate(tokens: Tokens, lexicon: VerbLexicon) -> bool:
    """Two unequal clauses of >= 2 tokens joined by exactly one "and", with no
    temporal or spatial phrases and a detectable verb in at least one clause."""
    and_positions = [i for i, tok in enumerate(tokens) if tok == "and"]
    if len(and_positions) != 1:
        return False
    if _occurrences_of_any(tokens, TEMPORAL_KEYWORDS):
        return False
    if _occurrences_of_any(tokens, SPATIAL_MARKERS):
        return False
    split = and_positions[0]
    first, second = tokens[:split], tokens[split + 1 :]
    if len(first) < 2 or len(second) < 2:
        return False
    if first == second:
        return False
    return find_verb(first, lexicon) is not None or find_verb(second, lexicon) is not None


def is_temporal_candidate(tokens: Tokens) -> bool:
    """Exactly one temporal keyword, with unequal non-empty events around it."""
    occurrences = _occurrences_of_any(tokens, TEMPORAL_KEYWORDS)
    if len(occurrences) != 1:
        return False
    start, phrase = occurrences[0]
    if start < 1 or start + len(phrase) > len(tokens) - 1:
        return False
    # Equal events would make the reversed (type-2) caption identical.
    return tokens[:start] != tokens[start + len(phrase) :]


def _split_spatial(tokens: Tokens) -> tuple[int, int, Tokens] | None:
    """Locate (connector index, marker start, marker) for a spatial candidate."""
    markers = _occurrences_of_any(tokens, SPATIAL_MARKERS)
    if len(markers) != 1:
        return None
    marker_start, marker = markers[0]
    connectors = [
        i
        for i, tok in enumerate(tokens)
        if tok in SPATIAL_CONNECTORS
        and not (marker_start <= i < marker_start + len(marker))
    ]
    if len(connectors) != 1:
        return None
    conn = connectors[0]
    marker_end = marker_start + len(marker)
    # The marker must be the suffix of one of the two clauses.
    if marker_end == conn:
        clause_with_marker, other = tokens[:conn], tokens[conn + 1 :]
    elif marker_end == len(tokens) and marker_start > conn:
        clause_with_marker, other = tokens[conn + 1 :], tokens[:conn]
    else:
        return None
    # Both events must be non-empty once the marker is stripped, and unequal
    # (equal events would make the swapped type-2 caption identical).
    event = clause_with_marker[: -len(marker)]
    if not event or not other or event == other:
        return None
    return conn, marker_start, marker


def is_spatial_candidate(tokens: Tokens) -> bool:
    """Exactly one clause-final fore/background marker in a two-clause caption
    split by a single connector from {and, while, as}."""
    return _split_spatial(tokens) is not None


def iter_candidates(corpus: Corpus, kind: str, lexicon: VerbLexicon):
    """Yield (candidate_id, Caption) for captions that fit ``kind``.

    Candidate ids are "<clip_id>#<caption_index>", stable across runs.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown perturbation kind {kind!r}; expected one of {KINDS}")
    for item in corpus.items:
        for j, caption in enumerate(item.captions):
            tokens = caption.tokens
            if kind == "semantic":
                ok = is_semantic_candidate(tokens, lexicon)
            elif kind == "temporal":
                ok = is_temporal_candidate(tokens)
            else:
                ok = is_spatial_candidate(tokens)
            if ok:
                yield f"{item.id}#{j}", caption


def find_candidates(corpus: Corpus, kind: str, lexicon: VerbLexicon) -> list[Caption]:
    return [caption for _, caption in iter_candidates(corpus, kind, lexicon)]
