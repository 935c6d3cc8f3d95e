"""Deterministic lexical judge: the offline stand-in for the LLM judge.

All three judgments reduce to content-token overlap, so identical inputs
and config always produce identical outputs. This is the judge behind
every golden-file test.
"""

from __future__ import annotations

import re

from ..nuggets import Nugget, NuggetBank
from ..transcript import CitationSpan, Transcript, Turn
from .base import AlignmentResult, CitationVerdict, JudgeConfig
from ..textops import (
    content_token_set,
    coverage,
    is_numeric_token,
    normalize_tokens,
    segment_sentences,
    token_texts,
)

MIN_EXTRACT_TOKENS = 6

_ANSWER_MARKER = re.compile(r"^\s*A[.:]\s*")


class SummaryIndex:
    """Precomputed sentence windows of a summary (1-3 consecutive sentences).

    Windows are ordered narrowest first, then by start position, which is
    exactly the tie-break order for alignment: among equally good matches
    the shortest window wins, and among those the earliest.
    """

    def __init__(self, text: str):
        if not text.strip():
            raise ValueError("summary text is empty")
        self.text = text
        self.sentences = segment_sentences(text)
        sentence_tokens = [content_token_set(text[s:e]) for s, e in self.sentences]
        self.windows: list[tuple[int, int, frozenset[str]]] = []
        for width in range(1, min(3, len(self.sentences)) + 1):
            for i in range(len(self.sentences) - width + 1):
                tokens: set[str] = set()
                for j in range(i, i + width):
                    tokens |= sentence_tokens[j]
                start = self.sentences[i][0]
                end = self.sentences[i + width - 1][1]
                self.windows.append((start, end, frozenset(tokens)))


class HeuristicJudge:
    def __init__(self, config: JudgeConfig | None = None):
        self.config = config or JudgeConfig()

    def extract_nuggets(self, transcript: Transcript) -> NuggetBank:
        """One nugget per Answer line carrying at least 6 content tokens.

        The nugget text is the line text with the "A." marker stripped; the
        citation is that single line. Bank order follows document order, so
        ids ``n1..nN`` are already sorted by first-citation position.
        """
        nuggets: list[Nugget] = []
        for page_number, line in transcript.iter_lines():
            if line.turn is not Turn.ANSWER:
                continue
            text = _ANSWER_MARKER.sub("", line.text, count=1).strip()
            if len(normalize_tokens(text)) < MIN_EXTRACT_TOKENS:
                continue
            span = CitationSpan(page_number, line.number, page_number, line.number)
            nuggets.append(Nugget(id=f"n{len(nuggets) + 1}", text=text, citations=(span,)))
        return NuggetBank(transcript_id=transcript.id, nuggets=tuple(nuggets))

    def align_nugget(self, nugget: Nugget, summary_text: str) -> AlignmentResult:
        return self._align(nugget, SummaryIndex(summary_text))

    def align_bank(self, bank: NuggetBank, summary_text: str) -> dict[str, AlignmentResult]:
        index = SummaryIndex(summary_text)
        return {nugget.id: self._align(nugget, index) for nugget in bank.nuggets}

    def _align(self, nugget: Nugget, index: SummaryIndex) -> AlignmentResult:
        ordered_target = token_texts(normalize_tokens(nugget.text))
        target = frozenset(ordered_target)
        best: tuple[int, int, frozenset[str]] | None = None
        best_coverage = -1.0
        for window in index.windows:
            window_coverage = coverage(target, window[2])
            if window_coverage > best_coverage:
                best_coverage = window_coverage
                best = window
        if best is None:  # summary with no sentences cannot match anything
            return AlignmentResult(nugget.id, 0, None, _absent_note(ordered_target))

        if best_coverage >= self.config.full_threshold:
            score = 2
        elif best_coverage >= self.config.partial_threshold:
            score = 1
        else:
            score = 0
        absent = [token for token in ordered_target if token not in best[2]]
        return AlignmentResult(
            nugget_id=nugget.id,
            score=score,
            matched_segment=(best[0], best[1]) if score >= 1 else None,
            explanation=_absent_note(absent),
        )

    def verify_citation(self, claim_text: str, cited_span_text: str) -> CitationVerdict:
        if not claim_text.strip() or not cited_span_text.strip():
            raise ValueError("claim and cited span must be non-empty")
        ordered_claim = token_texts(normalize_tokens(claim_text))
        claim_tokens = frozenset(ordered_claim)
        span_tokens = content_token_set(cited_span_text)

        missing_numeric = [
            token
            for token in ordered_claim
            if is_numeric_token(token) and token not in span_tokens
        ]
        claim_coverage = coverage(claim_tokens, span_tokens)
        absent = [token for token in ordered_claim if token not in span_tokens]

        parts = []
        if missing_numeric:
            parts.append("numeric tokens missing from span: " + ", ".join(missing_numeric))
        if absent:
            parts.append("content tokens missing from span: " + ", ".join(absent))
        rationale = "; ".join(parts) if parts else "claim fully supported by the cited span"

        return CitationVerdict(
            accurate=not missing_numeric,
            covered=claim_coverage >= self.config.coverage_threshold,
            sufficient=claim_coverage >= self.config.sufficiency_threshold,
            rationale=rationale,
        )


def _absent_note(absent: list[str]) -> str:
    return "missing: " + ", ".join(absent) if absent else ""
