"""Toolkit for auditing audio-captioning metrics, augmenting captioned audio, and
analyzing caption vocabulary imbalance."""

__version__ = "0.1.0"
