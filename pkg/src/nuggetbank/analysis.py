"""Turn per-nugget judgments into the two user-facing review artifacts.

* :func:`compare_summaries` partitions the nugget bank into matched /
  unique / missing sets for two candidate summaries, with coverage
  statistics for the header.
* :func:`build_refinement_report` lists omissions, flags weakly supported
  or mis-cited segments with an actionable suggestion, and surfaces
  content discrepancies for one summary.

Everything here is a pure function over immutable inputs; labeling a
nugget re-derives reports without re-judging.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from typing import Optional

from .errors import BadSpanRef, IncompleteAlignment, MissingVerdicts, SpanOutOfRange
from .judge.base import AlignmentResult, CitationVerdict, Judge
from .textops import segment_sentences
from .nuggets import Importance, Nugget, NuggetBank
from .transcript import CitationSpan, Transcript, parse_span_ref, resolve_span

_BRACKET_GROUP = re.compile(r"[(\[][^()\[\]]*[)\]]")
_REF_CANDIDATE = re.compile(r"\d+\s*:\s*\d+(?:\s*-\s*\d+\s*:\s*\d+)?")


@dataclass(frozen=True)
class SummarySegment:
    """One sentence of a summary with its inline citation references.

    ``claim_text`` is the sentence with citation groups removed; it is what
    citation verification judges. Unparseable reference candidates land in
    ``bad_refs`` instead of failing segmentation.
    """

    index: int
    start: int
    end: int
    text: str
    claim_text: str
    citations: tuple[CitationSpan, ...]
    bad_refs: tuple[str, ...]


@dataclass(frozen=True)
class SummaryDoc:
    id: str
    text: str
    segments: tuple[SummarySegment, ...]


def summary_id_for(text: str) -> str:
    return "s" + hashlib.sha256(text.encode("utf-8")).hexdigest()[:12]


def segment_summary(text: str, *, summary_id: Optional[str] = None) -> SummaryDoc:
    """Split a summary into sentence segments and extract inline citations.

    Segments tile the text in order (only whitespace between them).
    Citation references are recognized inside parentheses or brackets;
    candidates that match the digit grammar but violate the span rules
    (zero components, inverted range) become ``bad_refs`` annotations.
    """
    if not text.strip():
        raise ValueError("summary text is empty")
    segments: list[SummarySegment] = []
    for index, (start, end) in enumerate(segment_sentences(text)):
        sentence = text[start:end]
        citations: list[CitationSpan] = []
        bad_refs: list[str] = []
        claim_parts: list[str] = []
        cursor = 0
        for group in _BRACKET_GROUP.finditer(sentence):
            candidates = _REF_CANDIDATE.findall(group.group())
            if not candidates:
                continue
            for candidate in candidates:
                try:
                    citations.append(parse_span_ref(candidate))
                except BadSpanRef:
                    bad_refs.append(candidate)
            claim_parts.append(sentence[cursor : group.start()])
            cursor = group.end()
        claim_parts.append(sentence[cursor:])
        claim_text = " ".join("".join(claim_parts).split())
        segments.append(
            SummarySegment(
                index=index,
                start=start,
                end=end,
                text=sentence,
                claim_text=claim_text or sentence,
                citations=tuple(citations),
                bad_refs=tuple(bad_refs),
            )
        )
    return SummaryDoc(id=summary_id or summary_id_for(text), text=text, segments=tuple(segments))


@dataclass(frozen=True)
class ComparisonStats:
    matched: int
    unique_a: int
    unique_b: int
    missing: int
    coverage_a: float
    coverage_b: float


@dataclass(frozen=True)
class ComparisonReport:
    """Partition of the bank against summaries A and B, plus statistics.

    The four id tuples are pairwise disjoint, union the whole bank, and
    keep bank order. Coverage weights a partial presence at half credit:
    ``(2 * fully + 1 * partially) / (2 * bank size)``.
    """

    transcript_id: str
    matched: tuple[str, ...]
    unique_a: tuple[str, ...]
    unique_b: tuple[str, ...]
    missing: tuple[str, ...]
    alignments_a: dict[str, AlignmentResult]
    alignments_b: dict[str, AlignmentResult]
    stats: ComparisonStats


def _check_covers_bank(bank: NuggetBank, alignments: dict[str, AlignmentResult], label: str) -> None:
    ids = set(bank.ids())
    missing = ids - set(alignments)
    extra = set(alignments) - ids
    if missing:
        raise IncompleteAlignment(f"alignment map {label} missing nugget ids: {sorted(missing)}")
    if extra:
        raise IncompleteAlignment(f"alignment map {label} has unknown nugget ids: {sorted(extra)}")


def _coverage_fraction(bank: NuggetBank, alignments: dict[str, AlignmentResult]) -> float:
    if not bank.nuggets:
        return 0.0
    fully = sum(1 for result in alignments.values() if result.score == 2)
    partially = sum(1 for result in alignments.values() if result.score == 1)
    return (2 * fully + partially) / (2 * len(bank.nuggets))


def compare_summaries(
    bank: NuggetBank,
    align_a: dict[str, AlignmentResult],
    align_b: dict[str, AlignmentResult],
) -> ComparisonReport:
    """Partition nuggets by presence (score >= 1) in each summary."""
    _check_covers_bank(bank, align_a, "A")
    _check_covers_bank(bank, align_b, "B")
    matched: list[str] = []
    unique_a: list[str] = []
    unique_b: list[str] = []
    missing: list[str] = []
    for nugget in bank.nuggets:
        in_a = align_a[nugget.id].score >= 1
        in_b = align_b[nugget.id].score >= 1
        if in_a and in_b:
            matched.append(nugget.id)
        elif in_a:
            unique_a.append(nugget.id)
        elif in_b:
            unique_b.append(nugget.id)
        else:
            missing.append(nugget.id)
    stats = ComparisonStats(
        matched=len(matched),
        unique_a=len(unique_a),
        unique_b=len(unique_b),
        missing=len(missing),
        coverage_a=_coverage_fraction(bank, align_a),
        coverage_b=_coverage_fraction(bank, align_b),
    )
    return ComparisonReport(
        transcript_id=bank.transcript_id,
        matched=tuple(matched),
        unique_a=tuple(unique_a),
        unique_b=tuple(unique_b),
        missing=tuple(missing),
        alignments_a=dict(align_a),
        alignments_b=dict(align_b),
        stats=stats,
    )


@dataclass(frozen=True)
class Omission:
    nugget_id: str
    score: int
    explanation: str

    def __post_init__(self) -> None:
        if self.score not in (0, 1):
            raise ValueError(f"omission score must be 0 or 1, got {self.score!r}")


ADD_CITATION = "add-citation"
FIX_CITATION = "fix-citation"
EXPAND_CLAIM = "expand-claim"


@dataclass(frozen=True)
class FlaggedSegment:
    segment_index: int
    start: int
    end: int
    verdict: Optional[CitationVerdict]
    bad_refs: tuple[str, ...]
    suggestion_kind: str
    suggestion: str


@dataclass(frozen=True)
class Discrepancy:
    segment_index: int
    start: int
    end: int
    nugget_id: str
    note: str


@dataclass(frozen=True)
class RefinementReport:
    transcript_id: str
    summary_id: str
    omissions: tuple[Omission, ...]
    flagged_segments: tuple[FlaggedSegment, ...]
    discrepancies: tuple[Discrepancy, ...]


_IMPORTANCE_RANK = {Importance.VITAL: 0, Importance.OKAY: 1, Importance.UNLABELED: 2}


def _suggest(verdict: Optional[CitationVerdict], bad_refs: tuple[str, ...]) -> tuple[str, str]:
    if verdict is not None:
        if not verdict.accurate:
            return FIX_CITATION, (
                f"Fix the citation or correct the claim's figures ({verdict.rationale})."
            )
        if not verdict.covered:
            return EXPAND_CLAIM, (
                f"Rework the claim to state what the cited span actually supports ({verdict.rationale})."
            )
        return ADD_CITATION, (
            f"Cite an additional span for the unsupported parts, or soften the claim ({verdict.rationale})."
        )
    return FIX_CITATION, "Fix unparseable citation reference(s): " + ", ".join(bad_refs) + "."


def build_refinement_report(
    doc: SummaryDoc,
    bank: NuggetBank,
    alignments: dict[str, AlignmentResult],
    verdicts: dict[int, list[CitationVerdict]],
) -> RefinementReport:
    """Derive the guided-refinement artifact for one summary.

    Omissions are the nuggets scored 0 or 1, vital-first then by
    first-citation position, non-relevant ones excluded. A segment is
    flagged when any citation verdict has a false field or a reference
    did not parse; the suggestion is template-generated from the verdict.
    Discrepancies point at matched segments whose nugget is not fully
    expressed there.
    """
    _check_covers_bank(bank, alignments, "summary")
    for segment in doc.segments:
        supplied = verdicts.get(segment.index, [])
        if len(supplied) < len(segment.citations):
            raise MissingVerdicts(
                f"segment {segment.index} has {len(segment.citations)} citation(s) "
                f"but {len(supplied)} verdict(s)"
            )

    omitted = [
        nugget
        for nugget in bank.nuggets
        if alignments[nugget.id].score <= 1 and nugget.importance is not Importance.NON_RELEVANT
    ]
    bank_order = {nugget.id: index for index, nugget in enumerate(bank.nuggets)}
    omitted.sort(
        key=lambda n: (_IMPORTANCE_RANK[n.importance], n.first_citation, bank_order[n.id])
    )
    omissions = tuple(
        Omission(n.id, alignments[n.id].score, alignments[n.id].explanation) for n in omitted
    )

    flagged: list[FlaggedSegment] = []
    for segment in doc.segments:
        failing = next(
            (
                verdict
                for verdict in verdicts.get(segment.index, [])
                if not (verdict.accurate and verdict.covered and verdict.sufficient)
            ),
            None,
        )
        if failing is None and not segment.bad_refs:
            continue
        kind, suggestion = _suggest(failing, segment.bad_refs)
        flagged.append(
            FlaggedSegment(
                segment_index=segment.index,
                start=segment.start,
                end=segment.end,
                verdict=failing,
                bad_refs=segment.bad_refs,
                suggestion_kind=kind,
                suggestion=suggestion,
            )
        )

    discrepancies: list[Discrepancy] = []
    for nugget in bank.nuggets:
        result = alignments[nugget.id]
        if result.matched_segment is None or not result.explanation:
            continue
        m_start, m_end = result.matched_segment
        segment = next(
            (s for s in doc.segments if s.start < m_end and m_start < s.end), None
        )
        if segment is None:
            continue
        discrepancies.append(
            Discrepancy(
                segment_index=segment.index,
                start=segment.start,
                end=segment.end,
                nugget_id=nugget.id,
                note=result.explanation,
            )
        )
    discrepancies.sort(key=lambda d: (d.start, bank_order[d.nugget_id]))

    return RefinementReport(
        transcript_id=bank.transcript_id,
        summary_id=doc.id,
        omissions=omissions,
        flagged_segments=tuple(flagged),
        discrepancies=tuple(discrepancies),
    )


def verify_summary_citations(
    doc: SummaryDoc, transcript: Transcript, judge: Judge
) -> dict[int, list[CitationVerdict]]:
    """Run citation verification for every cited segment of a summary.

    A reference that parses but addresses a span the transcript lacks gets
    an all-false verdict rather than failing the pipeline; the rationale
    names the missing span.
    """
    verdicts: dict[int, list[CitationVerdict]] = {}
    for segment in doc.segments:
        if not segment.citations:
            continue
        results: list[CitationVerdict] = []
        for span in segment.citations:
            try:
                span_text = resolve_span(transcript, span)
            except SpanOutOfRange as exc:
                results.append(
                    CitationVerdict(
                        accurate=False,
                        covered=False,
                        sufficient=False,
                        rationale=f"cited span does not exist: {exc}",
                    )
                )
                continue
            results.append(judge.verify_citation(segment.claim_text, span_text))
        verdicts[segment.index] = results
    return verdicts
