"""Verb lexicon: a plain, user-replaceable word list."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from ..errors import DataError


@dataclass(frozen=True)
class VerbLexicon:
    verbs: frozenset[str]

    def __post_init__(self):
        if not self.verbs:
            raise ValueError("verb lexicon must be non-empty")
        bad = [v for v in self.verbs if (" " in v) or v != v.lower() or not v]
        if bad:
            raise ValueError(f"lexicon entries must be single lowercase words: {bad[:5]}")

    def __contains__(self, word: str) -> bool:
        return word in self.verbs

    def sorted(self) -> list[str]:
        return sorted(self.verbs)


def parse_lexicon(text: str) -> VerbLexicon:
    """Parse a newline-delimited word list; '#' lines are comments."""
    words = set()
    for line in text.splitlines():
        word = line.strip()
        if not word or word.startswith("#"):
            continue
        words.add(word.lower())
    if not words:
        raise DataError("lexicon file contains no words")
    return VerbLexicon(verbs=frozenset(words))


def load_lexicon(path: str | Path) -> VerbLexicon:
    with open(path, encoding="utf-8") as fh:
        return parse_lexicon(fh.read())


def default_lexicon() -> VerbLexicon:
    text = resources.files("capaudit.perturb").joinpath("verbs.txt").read_text("utf-8")
    return parse_lexicon(text)
