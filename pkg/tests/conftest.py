import numpy as np
import pytest

from capaudit.corpus import AudioBuffer, Caption, CaptionedClip, Corpus, write_wav


def make_wav(path, samples, rate=16000):
    buf = AudioBuffer(samples=np.asarray(samples, dtype=np.float64), sample_rate=rate)
    write_wav(buf, path)
    return str(path)


def clotho_clip(clip_id, captions, audio_path="unused.wav", rate=16000, duration=20.0):
    return CaptionedClip(
        id=clip_id,
        audio_path=audio_path,
        captions=[Caption(c) for c in captions],
        source="clotho",
        sample_rate=rate,
        duration_s=duration,
    )


def audiocaps_clip(clip_id, caption, audio_path="unused.wav", rate=16000, duration=10.0):
    return CaptionedClip(
        id=clip_id,
        audio_path=audio_path,
        captions=[Caption(caption)],
        source="audiocaps",
        sample_rate=rate,
        duration_s=duration,
    )


def perturb_corpus(n_per_kind):
    """Synthetic single-caption corpus with n candidates for each error kind."""
    items = []
    for i in range(n_per_kind):
        sem = f"a dog{i} barks and a car{i} passes"
        temp = (
            f"rain{i} falls followed by thunder{i} rumbles"
            if i % 2 == 0
            else f"a bell{i} rings and then birds{i} sing"
        )
        spat = [
            f"a man{i} talks and music{i} plays in the background",
            f"music{i} plays in the background while a man{i} talks",
            f"birds{i} chirp in the foreground as water{i} flows",
        ][i % 3]
        for kind, text in (("sem", sem), ("temp", temp), ("spat", spat)):
            items.append(audiocaps_clip(f"{kind}-{i}", text))
    return Corpus(items=items)


@pytest.fixture
def tiny_clotho(tmp_path):
    """Five clotho-style clips with real (tiny) WAV files."""
    rng = np.random.default_rng(7)
    items = []
    for i in range(5):
        path = tmp_path / f"clotho_{i}.wav"
        make_wav(path, rng.uniform(-0.9, 0.9, size=50 + 13 * i))
        items.append(
            clotho_clip(
                f"clotho_{i}",
                [f"a dog barks near house {i} take {j}" for j in range(5)],
                audio_path=str(path),
            )
        )
    return Corpus(items=items)


@pytest.fixture
def tiny_audiocaps(tmp_path):
    rng = np.random.default_rng(11)
    items = []
    for i in range(5):
        path = tmp_path / f"acaps_{i}.wav"
        make_wav(path, rng.uniform(-0.9, 0.9, size=40 + 17 * i))
        items.append(
            audiocaps_clip(f"acaps_{i}", f"rain falls on roof {i}", audio_path=str(path))
        )
    return Corpus(items=items)
