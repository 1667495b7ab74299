"""Line-delimited JSON corpus manifests.

One JSON object per line with fields {id, audio_path, captions, source,
sample_rate, duration_s} and an optional provenance object on augmented items.
Loading the file written for a corpus reproduces that corpus exactly.
"""

from __future__ import annotations

import json
from pathlib import Path

from ..errors import DataError
from .model import Caption, CaptionedClip, Corpus, SOURCES

_REQUIRED = ("id", "audio_path", "captions", "source", "sample_rate", "duration_s")
_OPTIONAL = ("provenance",)


def clip_to_record(item: CaptionedClip) -> dict:
    record = {
        "id": item.id,
        "audio_path": item.audio_path,
        "captions": [c.text for c in item.captions],
        "source": item.source,
        "sample_rate": item.sample_rate,
        "duration_s": item.duration_s,
    }
    if item.provenance is not None:
        record["provenance"] = item.provenance
    return record


def write_manifest(corpus: Corpus, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for item in corpus.items:
            fh.write(json.dumps(clip_to_record(item), sort_keys=True, ensure_ascii=False))
            fh.write("\n")


def record_to_clip(record: dict, where: str = "record") -> CaptionedClip:
    if not isinstance(record, dict):
        raise DataError(f"{where}: manifest record must be a JSON object")
    missing = [k for k in _REQUIRED if k not in record]
    if missing:
        raise DataError(f"{where}: missing fields {missing}")
    unknown = [k for k in record if k not in _REQUIRED and k not in _OPTIONAL]
    if unknown:
        raise DataError(f"{where}: unexpected fields {unknown}")
    if record["source"] not in SOURCES:
        raise DataError(f"{where}: unknown source tag {record['source']!r}")
    captions = record["captions"]
    if not isinstance(captions, list) or not captions:
        raise DataError(f"{where}: captions must be a non-empty list")
    try:
        return CaptionedClip(
            id=record["id"],
            audio_path=record["audio_path"],
            captions=[Caption(text) for text in captions],
            source=record["source"],
            sample_rate=record["sample_rate"],
            duration_s=record["duration_s"],
            provenance=record.get("provenance"),
        )
    except (TypeError, ValueError) as exc:
        raise DataError(f"{where}: {exc}") from exc


def load_manifest(path: str | Path) -> Corpus:
    items: list[CaptionedClip] = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DataError(f"{path}:{lineno}: invalid JSON: {exc}") from exc
            clip = record_to_clip(record, where=f"{path}:{lineno}")
            if clip.id in seen:
                raise DataError(f"{path}:{lineno}: duplicate id {clip.id!r}")
            seen.add(clip.id)
            items.append(clip)
    return Corpus(items=items)
