"""Caption text normalization: tokenization and n-gram extraction.

One normalization is used everywhere (metrics, vocabulary statistics, word-count
filters): lowercase, strip a fixed punctuation set, split on whitespace.
"""

from collections import Counter

# Punctuation characters removed before splitting. Hyphens are removed (not
# replaced by a space), so "dog-house" tokenizes as the single word "doghouse".
PUNCTUATION = '.,!?;:"\'()-'
_PUNCT_TABLE = str.maketrans("", "", PUNCTUATION)


def tokenize(text: str) -> list[str]:
    """Lowercase, strip punctuation, and split ``text`` into word tokens.

    Empty input (or input that is all punctuation/whitespace) yields ``[]``.
    """
    return text.lower().translate(_PUNCT_TABLE).split()


def ngrams(tokens: list[str] | tuple[str, ...], n: int) -> Counter:
    """Multiset of contiguous ``n``-grams of ``tokens`` as a Counter of tuples.

    Returns an empty Counter when ``len(tokens) < n``. ``n`` must be >= 1.
    """
    if n < 1:
        raise ValueError(f"n-gram order must be >= 1, got {n}")
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))
