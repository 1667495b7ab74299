"""CSV ingestion for Clotho-style and AudioCaps-style caption tables."""

from __future__ import annotations

import csv
import warnings
from pathlib import Path

from ..errors import DataError
from .model import Caption, CaptionedClip, Corpus
from .wavio import probe_wav

CLOTHO_COLUMNS = ("file_name", "caption_1", "caption_2", "caption_3", "caption_4", "caption_5")
AUDIOCAPS_COLUMNS = ("audiocap_id", "youtube_id", "start_time", "caption")

# Published Clotho v2 split sizes (development / eval / validation).
CLOTHO_SPLIT_SIZES = (3839, 1045, 1045)
CLOTHO_DURATION_RANGE = (15.0, 30.0)
DEFAULT_SAMPLE_RATE = 16000


def _probe_or_default(audio_path: Path) -> tuple[int, float]:
    """Header-probe the referenced audio when present; audio is never fully loaded."""
    if audio_path.is_file():
        return probe_wav(audio_path)
    return DEFAULT_SAMPLE_RATE, 0.0


def _check_columns(fieldnames, required, csv_path) -> None:
    missing = [c for c in required if fieldnames is None or c not in fieldnames]
    if missing:
        raise DataError(f"{csv_path}: missing required columns {missing}")


def load_clotho_csv(csv_path: str | Path, audio_dir: str | Path) -> Corpus:
    """Load a Clotho split CSV (five captions per row) into a Corpus.

    Emits warnings (never errors) when the split size differs from the published
    3,839/1,045/1,045 counts or a probed clip duration falls outside [15s, 30s].
    """
    csv_path = Path(csv_path)
    audio_dir = Path(audio_dir)
    items: list[CaptionedClip] = []
    seen: set[str] = set()
    with open(csv_path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        _check_columns(reader.fieldnames, CLOTHO_COLUMNS, csv_path)
        for lineno, row in enumerate(reader, start=2):
            name = (row.get("file_name") or "").strip()
            if not name:
                raise DataError(f"{csv_path}:{lineno}: empty file_name")
            if name in seen:
                raise DataError(f"{csv_path}:{lineno}: duplicate file_name {name!r}")
            seen.add(name)
            captions = []
            for col in CLOTHO_COLUMNS[1:]:
                cell = (row.get(col) or "").strip()
                if not cell:
                    raise DataError(f"{csv_path}:{lineno}: empty {col} for {name!r}")
                try:
                    captions.append(Caption(cell))
                except ValueError as exc:
                    raise DataError(f"{csv_path}:{lineno}: {exc}") from exc
            audio_path = audio_dir / name
            rate, duration = _probe_or_default(audio_path)
            if duration > 0 and not (
                CLOTHO_DURATION_RANGE[0] <= duration <= CLOTHO_DURATION_RANGE[1]
            ):
                warnings.warn(
                    f"{name}: duration {duration:.2f}s outside the published Clotho "
                    f"range {CLOTHO_DURATION_RANGE}",
                    stacklevel=2,
                )
            items.append(
                CaptionedClip(
                    id=name,
                    audio_path=str(audio_path),
                    captions=captions,
                    source="clotho",
                    sample_rate=rate,
                    duration_s=duration,
                )
            )
    if len(items) not in CLOTHO_SPLIT_SIZES:
        warnings.warn(
            f"{csv_path}: split has {len(items)} items; published Clotho splits have "
            f"{CLOTHO_SPLIT_SIZES[0]}, {CLOTHO_SPLIT_SIZES[1]} or {CLOTHO_SPLIT_SIZES[2]}",
            stacklevel=2,
        )
    return Corpus(items=items)


def load_audiocaps_csv(csv_path: str | Path, audio_dir: str | Path) -> Corpus:
    """Load an AudioCaps split CSV (one caption per row) into a Corpus."""
    csv_path = Path(csv_path)
    audio_dir = Path(audio_dir)
    items: list[CaptionedClip] = []
    seen: set[str] = set()
    with open(csv_path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        _check_columns(reader.fieldnames, AUDIOCAPS_COLUMNS, csv_path)
        for lineno, row in enumerate(reader, start=2):
            cap_id = (row.get("audiocap_id") or "").strip()
            if not cap_id:
                raise DataError(f"{csv_path}:{lineno}: empty audiocap_id")
            if cap_id in seen:
                raise DataError(f"{csv_path}:{lineno}: duplicate audiocap_id {cap_id!r}")
            seen.add(cap_id)
            start_time = (row.get("start_time") or "").strip()
            try:
                float(start_time)
            except ValueError as exc:
                raise DataError(
                    f"{csv_path}:{lineno}: non-numeric start_time {start_time!r}"
                ) from exc
            cell = (row.get("caption") or "").strip()
            if not cell:
                raise DataError(f"{csv_path}:{lineno}: empty caption for {cap_id!r}")
            try:
                caption = Caption(cell)
            except ValueError as exc:
                raise DataError(f"{csv_path}:{lineno}: {exc}") from exc
            audio_path = audio_dir / f"{cap_id}.wav"
            rate, duration = _probe_or_default(audio_path)
            items.append(
                CaptionedClip(
                    id=cap_id,
                    audio_path=str(audio_path),
                    captions=[caption],
                    source="audiocaps",
                    sample_rate=rate,
                    duration_s=duration,
                )
            )
    return Corpus(items=items)


def filter_max_words(corpus: Corpus, k: int = 8) -> Corpus:
    """Keep only clips whose every caption has at most ``k`` normalized tokens."""
    if k < 1:
        raise ValueError(f"word limit must be >= 1, got {k}")
    kept = [
        item for item in corpus.items if all(len(c.tokens) <= k for c in item.captions)
    ]
    return Corpus(items=kept)
