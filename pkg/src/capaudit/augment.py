"""Caption-aware audio augmentation: concatenation and weighted mixing.

Pairs are drawn from a five-caption (Clotho-style) corpus and a short-caption
(AudioCaps-style) corpus. Concatenation joins the clips end to end with the
caption order matching the audio order; mixing overlays them under one of
three weight pairs, with the louder event narrated as the foreground.
"""

from __future__ import annotations

import hashlib
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .corpus.manifest import write_manifest
from .corpus.model import AudioBuffer, Caption, CaptionedClip, Corpus
from .corpus.wavio import read_wav, write_wav
from .errors import DataError

MIX_WEIGHT_CHOICES = ((0.5, 0.5), (0.25, 0.75), (0.75, 0.25))
CONJUNCTIONS = ("and", "followed by")
METHODS = ("concat", "mixing")

# Caption templates per (primary, secondary) mixing weight; {a} is the
# Clotho-side caption, {b} the AudioCaps-side caption.
DEFAULT_MIX_TEMPLATES: dict[tuple[float, float], str] = {
    (0.5, 0.5): "{a} and {b}",
    (0.75, 0.25): "{a} and {b} in the background",
    (0.25, 0.75): "{a} in the background and {b}",
}


@dataclass(frozen=True)
class MixWeights:
    w_primary: float
    w_secondary: float

    def __post_init__(self):
        if (self.w_primary, self.w_secondary) not in MIX_WEIGHT_CHOICES:
            raise ValueError(
                f"weights must be one of {MIX_WEIGHT_CHOICES}, "
                f"got ({self.w_primary}, {self.w_secondary})"
            )


@dataclass
class AugmentedItem:
    audio: AudioBuffer
    caption: Caption
    provenance: dict


class _AudioCache:
    """Per-run cache so repeatedly drawn clips are decoded once."""

    def __init__(self):
        self._buffers: dict[str, AudioBuffer] = {}

    def load(self, clip: CaptionedClip) -> AudioBuffer:
        buf = self._buffers.get(clip.id)
        if buf is None:
            buf = read_wav(clip.audio_path)
            self._buffers[clip.id] = buf
        return buf


def _check_pair(a: CaptionedClip, b: CaptionedClip, a_audio: AudioBuffer, b_audio: AudioBuffer):
    if a_audio.sample_rate != b_audio.sample_rate:
        raise DataError(
            f"sample-rate mismatch: {a.id} at {a_audio.sample_rate} Hz, "
            f"{b.id} at {b_audio.sample_rate} Hz"
        )
    if len(a_audio) == 0 or len(b_audio) == 0:
        raise DataError(f"empty audio in pair ({a.id}, {b.id})")


def concat_pair(
    a: CaptionedClip,
    b: CaptionedClip,
    rng: random.Random,
    cache: _AudioCache | None = None,
) -> AugmentedItem:
    """Concatenate clip ``b`` before or after clip ``a`` (50% chance each) and
    join the captions with "and" or "followed by" in playback order."""
    cache = cache or _AudioCache()
    a_audio, b_audio = cache.load(a), cache.load(b)
    _check_pair(a, b, a_audio, b_audio)

    caption_index = rng.randrange(len(a.captions))
    b_first = rng.random() < 0.5
    conjunction = CONJUNCTIONS[rng.randrange(2)]

    a_text = a.captions[caption_index].text
    b_text = b.captions[0].text
    if b_first:
        samples = np.concatenate([b_audio.samples, a_audio.samples])
        text = f"{b_text} {conjunction} {a_text}"
    else:
        samples = np.concatenate([a_audio.samples, b_audio.samples])
        text = f"{a_text} {conjunction} {b_text}"

    provenance = {
        "method": "concat",
        "clotho_id": a.id,
        "audiocaps_id": b.id,
        "caption_index": caption_index,
        "order": "ba" if b_first else "ab",
        "conjunction": conjunction,
    }
    audio = AudioBuffer(samples=samples, sample_rate=a_audio.sample_rate)
    return AugmentedItem(audio=audio, caption=Caption(text), provenance=provenance)


def _pad_to(samples: np.ndarray, length: int) -> np.ndarray:
    if len(samples) >= length:
        return samples
    return np.concatenate([samples, np.zeros(length - len(samples))])


def mix_pair(
    a: CaptionedClip,
    b: CaptionedClip,
    rng: random.Random,
    templates: dict[tuple[float, float], str] | None = None,
    cache: _AudioCache | None = None,
) -> AugmentedItem:
    """Overlay the clips under a weight pair drawn from {(.5,.5),(.25,.75),(.75,.25)};
    the shorter clip is zero-padded at its end. The caption template follows the
    weights (the quieter event is described as background)."""
    templates = templates or DEFAULT_MIX_TEMPLATES
    cache = cache or _AudioCache()
    a_audio, b_audio = cache.load(a), cache.load(b)
    _check_pair(a, b, a_audio, b_audio)

    caption_index = rng.randrange(len(a.captions))
    weights = MIX_WEIGHT_CHOICES[rng.randrange(3)]

    length = max(len(a_audio), len(b_audio))
    samples = weights[0] * _pad_to(a_audio.samples, length) + weights[1] * _pad_to(
        b_audio.samples, length
    )
    template = templates[weights]
    text = template.format(a=a.captions[caption_index].text, b=b.captions[0].text)

    provenance = {
        "method": "mixing",
        "clotho_id": a.id,
        "audiocaps_id": b.id,
        "caption_index": caption_index,
        "weights": list(weights),
        "template": template,
    }
    audio = AudioBuffer(samples=samples, sample_rate=a_audio.sample_rate)
    return AugmentedItem(audio=audio, caption=Caption(text), provenance=provenance)


def pair_seed(master_seed: int, index: int) -> int:
    digest = hashlib.sha256(f"{master_seed}|{index}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def _generate_one(
    index: int,
    clotho: Corpus,
    audiocaps: Corpus,
    method: str,
    seed: int,
    templates,
    cache: _AudioCache,
) -> AugmentedItem:
    rng = random.Random(pair_seed(seed, index))
    a = clotho.items[rng.randrange(len(clotho.items))]
    b = audiocaps.items[rng.randrange(len(audiocaps.items))]
    if method == "concat":
        item = concat_pair(a, b, rng, cache=cache)
    else:
        item = mix_pair(a, b, rng, templates=templates, cache=cache)
    item.provenance["index"] = index
    item.provenance["item_seed"] = pair_seed(seed, index)
    return item


def generate_items(
    clotho: Corpus,
    audiocaps: Corpus,
    method: str,
    count: int,
    seed: int = 42,
    templates: dict[tuple[float, float], str] | None = None,
    jobs: int = 1,
) -> list[AugmentedItem]:
    """Generate ``count`` augmented items with independent uniform pair draws.

    Each output index has its own derived seed, so results are identical for
    any ``jobs`` value. The AudioCaps corpus is expected to be pre-filtered to
    short captions (eight or fewer words).
    """
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if not clotho.items or not audiocaps.items:
        raise DataError("both corpora must be non-empty")
    cache = _AudioCache()

    def build(index: int) -> AugmentedItem:
        return _generate_one(index, clotho, audiocaps, method, seed, templates, cache)

    # Warm the cache serially to avoid duplicate decodes across threads.
    if jobs > 1:
        for clip in list(clotho.items) + list(audiocaps.items):
            cache.load(clip)
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(build, range(count)))
    return [build(index) for index in range(count)]


def item_filename(method: str, index: int) -> str:
    return f"{method}_{index:06d}.wav"


def augment_dataset(
    clotho: Corpus,
    audiocaps: Corpus,
    method: str,
    count: int,
    seed: int,
    out_dir: str | Path,
    templates: dict[tuple[float, float], str] | None = None,
    jobs: int = 1,
) -> Corpus:
    """Generate items, write one WAV per item plus a JSONL manifest, and return
    the resulting corpus (source=augmented, provenance recorded per item)."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    items = generate_items(clotho, audiocaps, method, count, seed, templates, jobs)
    clips: list[CaptionedClip] = []
    for index, item in enumerate(items):
        wav_path = out_dir / item_filename(method, index)
        write_wav(item.audio, wav_path)
        clips.append(
            CaptionedClip(
                id=wav_path.stem,
                audio_path=str(wav_path),
                captions=[item.caption],
                source="augmented",
                sample_rate=item.audio.sample_rate,
                duration_s=item.audio.duration_s,
                provenance=item.provenance,
            )
        )
    corpus = Corpus(items=clips)
    write_manifest(corpus, out_dir / "manifest.jsonl")
    return corpus


def regenerate_item(
    provenance: dict,
    clotho: Corpus,
    audiocaps: Corpus,
    templates: dict[tuple[float, float], str] | None = None,
) -> AugmentedItem:
    """Rebuild an augmented item from its recorded draws (no randomness)."""
    templates = templates or DEFAULT_MIX_TEMPLATES
    cache = _AudioCache()
    a = clotho.by_id(provenance["clotho_id"])
    b = audiocaps.by_id(provenance["audiocaps_id"])
    a_audio, b_audio = cache.load(a), cache.load(b)
    _check_pair(a, b, a_audio, b_audio)
    a_text = a.captions[provenance["caption_index"]].text
    b_text = b.captions[0].text

    if provenance["method"] == "concat":
        if provenance["order"] == "ba":
            samples = np.concatenate([b_audio.samples, a_audio.samples])
            text = f"{b_text} {provenance['conjunction']} {a_text}"
        else:
            samples = np.concatenate([a_audio.samples, b_audio.samples])
            text = f"{a_text} {provenance['conjunction']} {b_text}"
    elif provenance["method"] == "mixing":
        weights = tuple(provenance["weights"])
        length = max(len(a_audio), len(b_audio))
        samples = weights[0] * _pad_to(a_audio.samples, length) + weights[1] * _pad_to(
            b_audio.samples, length
        )
        text = templates[weights].format(a=a_text, b=b_text)
    else:
        raise DataError(f"unknown augmentation method {provenance.get('method')!r}")

    audio = AudioBuffer(samples=samples, sample_rate=a_audio.sample_rate)
    return AugmentedItem(audio=audio, caption=Caption(text), provenance=dict(provenance))
