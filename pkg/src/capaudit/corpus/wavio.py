"""16-bit PCM RIFF/WAVE reading and writing.

Integer samples map to floats by division by 32768; writing quantizes with
saturation at +/-32767. Multi-channel input is downmixed to mono by the
per-frame arithmetic mean. A mono read/write round trip moves no sample by
more than one quantization step (1/32768).
"""

from __future__ import annotations

import wave
from pathlib import Path

import numpy as np

from ..errors import DataError
from .model import AudioBuffer

_SCALE = 32768.0


def read_wav(path: str | Path) -> AudioBuffer:
    """Load a 16-bit PCM WAV file as a mono AudioBuffer."""
    try:
        with wave.open(str(path), "rb") as wf:
            nchannels = wf.getnchannels()
            sampwidth = wf.getsampwidth()
            framerate = wf.getframerate()
            nframes = wf.getnframes()
            if sampwidth != 2:
                raise DataError(
                    f"{path}: unsupported bit depth {sampwidth * 8}; only 16-bit PCM is supported"
                )
            if nframes == 0:
                raise DataError(f"{path}: zero-length audio payload")
            raw = wf.readframes(nframes)
    except (wave.Error, EOFError) as exc:
        raise DataError(f"{path}: malformed WAV file: {exc}") from exc
    data = np.frombuffer(raw, dtype="<i2")
    if nchannels > 1:
        data = data.reshape(-1, nchannels).mean(axis=1)
    samples = np.asarray(data, dtype=np.float64) / _SCALE
    return AudioBuffer(samples=samples, sample_rate=framerate)


def write_wav(buffer: AudioBuffer, path: str | Path) -> None:
    """Write a mono AudioBuffer as 16-bit PCM little-endian WAV."""
    quantized = np.clip(np.round(buffer.samples * _SCALE), -32767, 32767).astype("<i2")
    with wave.open(str(path), "wb") as wf:
        wf.setnchannels(1)
        wf.setsampwidth(2)
        wf.setframerate(buffer.sample_rate)
        wf.writeframes(quantized.tobytes())


def probe_wav(path: str | Path) -> tuple[int, float]:
    """Read only the header: (sample_rate, duration in seconds)."""
    try:
        with wave.open(str(path), "rb") as wf:
            rate = wf.getframerate()
            frames = wf.getnframes()
    except (wave.Error, EOFError) as exc:
        raise DataError(f"{path}: malformed WAV file: {exc}") from exc
    return rate, frames / rate if rate else 0.0
