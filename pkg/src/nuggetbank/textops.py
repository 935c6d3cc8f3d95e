"""Token normalization and sentence segmentation shared by the judges.

Both heuristic judgments and nugget deduplication compare texts through
:func:`normalize_tokens`: lowercase, punctuation stripped, whitespace
split, stopwords dropped, numbers kept. Sentence segmentation is the
deterministic rule used to window summaries: a sentence ends at ``.``,
``?`` or ``!`` followed by whitespace and an uppercase letter, except
after a known abbreviation; bracketed citation groups that trail the
terminator stay attached to their sentence.
"""

from __future__ import annotations

import re
from functools import lru_cache
from importlib import resources
from typing import NamedTuple

_CURRENCY_SYMBOLS = "$€£"
_SCALE_WORDS = frozenset({"million", "billion", "thousand"})
_STRIP_PATTERN = re.compile(r"[^0-9a-z]+")


class Token(NamedTuple):
    """A normalized content token; ``currency`` marks e.g. ``$10`` -> ``10``."""

    text: str
    currency: bool = False

    def __str__(self) -> str:
        return self.text


@lru_cache(maxsize=1)
def stopwords() -> frozenset[str]:
    data = resources.files("nuggetbank.data").joinpath("stopwords.txt").read_text("utf-8")
    words = set()
    for line in data.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.add(line)
    return frozenset(words)


def normalize_tokens(text: str) -> list[Token]:
    """Normalize ``text`` into its ordered content tokens.

    Case and punctuation are erased, stopwords dropped, duplicates kept.
    A token that carried a currency symbol and still contains a digit is
    flagged as currency.
    """
    tokens: list[Token] = []
    stops = stopwords()
    for raw in text.split():
        cleaned = _STRIP_PATTERN.sub("", raw.lower())
        if not cleaned or cleaned in stops:
            continue
        currency = any(symbol in raw for symbol in _CURRENCY_SYMBOLS) and any(
            ch.isdigit() for ch in cleaned
        )
        tokens.append(Token(cleaned, currency))
    return tokens


def token_texts(tokens: list[Token]) -> list[str]:
    """Unique token texts in first-occurrence order."""
    seen: dict[str, None] = {}
    for token in tokens:
        seen.setdefault(token.text, None)
    return list(seen)


def content_token_set(text: str) -> frozenset[str]:
    return frozenset(token.text for token in normalize_tokens(text))


def is_numeric_token(text: str) -> bool:
    """Numeric for citation-accuracy purposes: digits or a scale word."""
    return any(ch.isdigit() for ch in text) or text in _SCALE_WORDS


def coverage(target: frozenset[str] | set[str], window: frozenset[str] | set[str]) -> float:
    """Fraction of ``target`` tokens present in ``window``; 1.0 when target is empty."""
    if not target:
        return 1.0
    return len(target & set(window)) / len(target)


_ABBREVIATIONS = ("Mr", "Ms", "Dr", "No", "Inc")
_BOUNDARY = re.compile(r"[.?!](?:\s*[(\[][^()\[\]]*[)\]])*")


def _ends_with_abbreviation(text: str, period_index: int) -> bool:
    start = period_index
    while start > 0 and text[start - 1].isalpha():
        start -= 1
    return text[start:period_index] in _ABBREVIATIONS


def segment_sentences(text: str) -> list[tuple[int, int]]:
    """Split ``text`` into sentence character ranges ``[start, end)``.

    Ranges are whitespace-trimmed and tile the text in order: everything
    between consecutive ranges (and before the first / after the last) is
    whitespace. Trailing ``(...)`` / ``[...]`` groups after a terminator
    belong to the sentence they follow, so inline citations stay with
    their claim.
    """
    cuts: list[int] = []
    for match in _BOUNDARY.finditer(text):
        if text[match.start()] == "." and _ends_with_abbreviation(text, match.start()):
            continue
        tail = text[match.end() :].lstrip()
        if tail and not tail[0].isupper():
            continue
        cuts.append(match.end())
    if not cuts or cuts[-1] != len(text):
        cuts.append(len(text))

    spans: list[tuple[int, int]] = []
    position = 0
    for cut in cuts:
        chunk = text[position:cut]
        if chunk.strip():
            left = len(chunk) - len(chunk.lstrip())
            right = len(chunk) - len(chunk.rstrip())
            spans.append((position + left, cut - right))
        position = cut
    return spans
