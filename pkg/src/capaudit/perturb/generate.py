"""Generation of type-1/type-2 perturbation pairs.

For each error kind, the type-1 edit should not change the meaning (clause
swap, temporal/spatial keyword weakened to "and") while the type-2 edit should
(verb replacement, event order reversal). A metric suitable for captioning
must score type-1 above type-2.
"""

from __future__ import annotations

import csv
import hashlib
import json
import random
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from ..corpus.model import Caption, Corpus
from ..errors import DataError
from .candidates import (
    KINDS,
    SPATIAL_CONNECTORS,
    _occurrences_of_any,
    _split_spatial,
    SPATIAL_MARKERS,
    TEMPORAL_KEYWORDS,
    detect_verb,
    find_verb,
    iter_candidates,
)
from .lexicon import VerbLexicon


@dataclass(frozen=True)
class PerturbationPair:
    original: Caption
    type1: Caption
    type2: Caption
    kind: str
    meta: dict

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.type1.text == self.original.text or self.type2.text == self.original.text:
            raise ValueError("perturbed captions must differ from the original text")


def _join(tokens: Sequence[str]) -> Caption:
    return Caption(" ".join(tokens))


def perturb_semantic(
    caption: Caption, lexicon: VerbLexicon, rng: random.Random
) -> PerturbationPair:
    """Type-1 swaps the two clauses around "and"; type-2 replaces one clause's
    verb with a different verb drawn from the lexicon."""
    tokens = caption.tokens
    and_positions = [i for i, tok in enumerate(tokens) if tok == "and"]
    if len(and_positions) != 1:
        raise ValueError(f"not a semantic candidate: {caption.text!r}")
    split = and_positions[0]
    first, second = list(tokens[:split]), list(tokens[split + 1 :])

    type1 = _join(second + ["and"] + first)

    verb_indices = {
        i: find_verb(clause, lexicon)
        for i, clause in enumerate((first, second))
        if find_verb(clause, lexicon) is not None
    }
    if not verb_indices:
        raise ValueError(f"no detectable verb in either clause of {caption.text!r}")
    clause_choice = rng.choice(sorted(verb_indices))
    clause = first if clause_choice == 0 else second
    verb_index = detect_verb(clause, lexicon)
    replaced = clause[verb_index]
    pool = [v for v in lexicon.sorted() if v != replaced]
    if not pool:
        raise ValueError("lexicon exhausted: no replacement verb available")
    replacement = rng.choice(pool)
    perturbed = clause.copy()
    perturbed[verb_index] = replacement
    if clause_choice == 0:
        type2 = _join(perturbed + ["and"] + second)
    else:
        type2 = _join(first + ["and"] + perturbed)

    meta = {
        "keyword": "and",
        "split_index": split,
        "clause_choice": clause_choice,
        "replaced_verb": replaced,
        "replacement_verb": replacement,
    }
    return PerturbationPair(caption, type1, type2, "semantic", meta)


def perturb_temporal(caption: Caption) -> PerturbationPair:
    """Type-1 weakens the temporal keyword to "and"; type-2 reverses the events
    around the keyword."""
    tokens = caption.tokens
    occurrences = _occurrences_of_any(tokens, TEMPORAL_KEYWORDS)
    if len(occurrences) != 1:
        raise ValueError(f"not a temporal candidate: {caption.text!r}")
    start, keyword = occurrences[0]
    before = list(tokens[:start])
    after = list(tokens[start + len(keyword) :])
    if not before or not after:
        raise ValueError(f"temporal keyword at the edge of {caption.text!r}")
    type1 = _join(before + ["and"] + after)
    type2 = _join(after + list(keyword) + before)
    meta = {"keyword": " ".join(keyword), "keyword_index": start}
    return PerturbationPair(caption, type1, type2, "temporal", meta)


def perturb_spatial(caption: Caption) -> PerturbationPair:
    """Type-1 drops the fore/background marker and normalizes the connector to
    "and"; type-2 swaps the two events while the marker keeps its slot."""
    tokens = caption.tokens
    located = _split_spatial(tokens)
    if located is None:
        raise ValueError(f"not a spatial candidate: {caption.text!r}")
    conn_index, marker_start, marker = located
    connector = tokens[conn_index]
    first = list(tokens[:conn_index])
    second = list(tokens[conn_index + 1 :])
    marker_list = list(marker)
    marker_on_first = marker_start < conn_index
    if marker_on_first:
        event_first, event_second = first[: -len(marker)], second
    else:
        event_first, event_second = first, second[: -len(marker)]

    type1 = _join(event_first + ["and"] + event_second)
    if marker_on_first:
        type2 = _join(event_second + marker_list + [connector] + event_first)
    else:
        type2 = _join(event_second + [connector] + event_first + marker_list)
    meta = {
        "marker": " ".join(marker),
        "connector": connector,
        "marker_on_first_clause": int(marker_on_first),
    }
    return PerturbationPair(caption, type1, type2, "spatial", meta)


def item_seed(master_seed: int, candidate_id: str) -> int:
    """Stable per-candidate seed, independent of iteration order and worker count."""
    digest = hashlib.sha256(f"{master_seed}|{candidate_id}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def _generate_one(
    candidate_id: str, caption: Caption, kind: str, master_seed: int, lexicon: VerbLexicon
) -> PerturbationPair:
    seed = item_seed(master_seed, candidate_id)
    if kind == "semantic":
        pair = perturb_semantic(caption, lexicon, random.Random(seed))
    elif kind == "temporal":
        pair = perturb_temporal(caption)
    else:
        pair = perturb_spatial(caption)
    meta = dict(pair.meta)
    meta["candidate_id"] = candidate_id
    meta["item_seed"] = seed
    return PerturbationPair(pair.original, pair.type1, pair.type2, pair.kind, meta)


def sample_pairs(
    corpus: Corpus,
    kind: str,
    n: int = 1500,
    seed: int = 42,
    lexicon: VerbLexicon | None = None,
    jobs: int = 1,
) -> list[PerturbationPair]:
    """Perturbation pairs for a uniform sample (without replacement) of candidates.

    When fewer than ``n`` candidates exist, all of them are used and a warning
    is emitted. Output is deterministic for a given (seed, corpus) regardless
    of ``jobs``.
    """
    from .lexicon import default_lexicon

    lexicon = lexicon or default_lexicon()
    candidates = sorted(iter_candidates(corpus, kind, lexicon))
    if not candidates:
        raise DataError(f"no {kind} candidates found in corpus")
    if len(candidates) > n:
        chosen = random.Random(seed).sample(candidates, n)
        chosen.sort()
    else:
        if len(candidates) < n:
            warnings.warn(
                f"only {len(candidates)} {kind} candidates available "
                f"(requested {n}); using all of them",
                stacklevel=2,
            )
        chosen = candidates

    def build(entry):
        candidate_id, caption = entry
        return _generate_one(candidate_id, caption, kind, seed, lexicon)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(build, chosen))
    return [build(entry) for entry in chosen]


PAIRS_CSV_COLUMNS = ("id", "kind", "original", "type1", "type2", "meta_json")


def write_pairs_csv(pairs: Sequence[PerturbationPair], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(PAIRS_CSV_COLUMNS)
        for pair in pairs:
            writer.writerow(
                [
                    pair.meta.get("candidate_id", ""),
                    pair.kind,
                    pair.original.text,
                    pair.type1.text,
                    pair.type2.text,
                    json.dumps(pair.meta, sort_keys=True),
                ]
            )


def read_pairs_csv(path: str | Path) -> list[PerturbationPair]:
    pairs: list[PerturbationPair] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        missing = [c for c in PAIRS_CSV_COLUMNS if reader.fieldnames is None or c not in reader.fieldnames]
        if missing:
            raise DataError(f"{path}: missing pair columns {missing}")
        for lineno, row in enumerate(reader, start=2):
            try:
                meta = json.loads(row["meta_json"]) if row["meta_json"] else {}
                pairs.append(
                    PerturbationPair(
                        original=Caption(row["original"]),
                        type1=Caption(row["type1"]),
                        type2=Caption(row["type2"]),
                        kind=row["kind"],
                        meta=meta,
                    )
                )
            except (ValueError, json.JSONDecodeError) as exc:
                raise DataError(f"{path}:{lineno}: {exc}") from exc
    return pairs
