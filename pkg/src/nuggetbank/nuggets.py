"""Nugget bank data model, validation, labeling, and deduplication.

A nugget is one self-contained fact sentence anchored by one or more
citation spans into a transcript; the bank of all nuggets for a transcript
is the rubric summaries are judged against. Banks are immutable values:
labeling and deduplication return new banks.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

from .errors import SpanOutOfRange, TranscriptMismatch, UnknownNugget
from .textops import normalize_tokens
from .transcript import CitationSpan, Transcript, resolve_span


class Importance(str, Enum):
    """Human-assigned nugget label; extraction always starts Unlabeled."""

    UNLABELED = "unlabeled"
    VITAL = "vital"
    OKAY = "okay"
    NON_RELEVANT = "non-relevant"


@dataclass(frozen=True)
class Nugget:
    id: str
    text: str
    citations: tuple[CitationSpan, ...]
    importance: Importance = Importance.UNLABELED

    def __post_init__(self) -> None:
        if "\n" in self.text:
            raise ValueError(f"nugget {self.id}: text contains a newline")
        if not self.citations:
            raise ValueError(f"nugget {self.id}: citations must be non-empty")

    @property
    def first_citation(self) -> CitationSpan:
        return min(self.citations)


@dataclass(frozen=True)
class NuggetBank:
    transcript_id: str
    nuggets: tuple[Nugget, ...]

    def __len__(self) -> int:
        return len(self.nuggets)

    def ids(self) -> list[str]:
        return [nugget.id for nugget in self.nuggets]

    def get(self, nugget_id: str) -> Optional[Nugget]:
        for nugget in self.nuggets:
            if nugget.id == nugget_id:
                return nugget
        return None


class IssueKind(str, Enum):
    DUPLICATE_ID = "duplicate_id"
    EMPTY_TEXT = "empty_text"
    UNRESOLVABLE_CITATION = "unresolvable_citation"


@dataclass(frozen=True)
class ValidationIssue:
    kind: IssueKind
    nugget_id: str
    span: Optional[CitationSpan] = None
    message: str = ""


def validate_bank(bank: NuggetBank, transcript: Transcript) -> list[ValidationIssue]:
    """Check a bank against its transcript; empty result means fully valid.

    Emits one issue per duplicated id, per empty nugget text, and per
    citation that does not resolve. Raises :class:`TranscriptMismatch`
    when the bank cites a different transcript.
    """
    if bank.transcript_id != transcript.id:
        raise TranscriptMismatch(
            f"bank is for transcript {bank.transcript_id!r}, got {transcript.id!r}"
        )
    issues: list[ValidationIssue] = []
    seen: set[str] = set()
    flagged_duplicates: set[str] = set()
    for nugget in bank.nuggets:
        if nugget.id in seen and nugget.id not in flagged_duplicates:
            issues.append(
                ValidationIssue(
                    IssueKind.DUPLICATE_ID,
                    nugget.id,
                    message=f"nugget id {nugget.id!r} appears more than once",
                )
            )
            flagged_duplicates.add(nugget.id)
        seen.add(nugget.id)
        if not nugget.text.strip():
            issues.append(
                ValidationIssue(
                    IssueKind.EMPTY_TEXT, nugget.id, message=f"nugget {nugget.id!r} has empty text"
                )
            )
        for span in nugget.citations:
            try:
                resolve_span(transcript, span)
            except SpanOutOfRange as exc:
                issues.append(
                    ValidationIssue(
                        IssueKind.UNRESOLVABLE_CITATION, nugget.id, span=span, message=str(exc)
                    )
                )
    return issues


def set_importance(bank: NuggetBank, nugget_id: str, label: Importance) -> NuggetBank:
    """Return a bank identical except for one nugget's importance label."""
    label = Importance(label)
    if bank.get(nugget_id) is None:
        raise UnknownNugget(f"no nugget {nugget_id!r} in bank for {bank.transcript_id}")
    nuggets = tuple(
        replace(nugget, importance=label) if nugget.id == nugget_id else nugget
        for nugget in bank.nuggets
    )
    return NuggetBank(transcript_id=bank.transcript_id, nuggets=nuggets)


def _token_multiset(text: str) -> tuple[str, ...]:
    return tuple(sorted(token.text for token in normalize_tokens(text)))


def dedupe_bank(bank: NuggetBank) -> NuggetBank:
    """Merge nuggets whose normalized token multisets coincide.

    The earlier nugget survives with its citation list extended by the
    duplicate's citations (order-preserving set union). Idempotent.
    """
    kept: list[Nugget] = []
    by_key: dict[tuple[str, ...], int] = {}
    for nugget in bank.nuggets:
        key = _token_multiset(nugget.text)
        if key in by_key:
            index = by_key[key]
            survivor = kept[index]
            merged = list(survivor.citations)
            for span in nugget.citations:
                if span not in merged:
                    merged.append(span)
            kept[index] = replace(survivor, citations=tuple(merged))
        else:
            by_key[key] = len(kept)
            kept.append(nugget)
    return NuggetBank(transcript_id=bank.transcript_id, nuggets=tuple(kept))
