"""Judge interface: configuration and result types.

A judge provides three capabilities (nugget extraction from a transcript,
nugget alignment against a summary, and citation verification) behind one
interface with two implementations: a deterministic lexical heuristic and
a remote LLM endpoint.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Optional, Protocol

if TYPE_CHECKING:
    from ..nuggets import Nugget, NuggetBank
    from ..transcript import Transcript


class JudgeKind(str, Enum):
    HEURISTIC = "heuristic"
    REMOTE = "remote"


@dataclass(frozen=True)
class JudgeConfig:
    """Judge selection plus the heuristic cutoffs (all config-exposed).

    Alignment scores 2/1 at window coverage >= ``full_threshold`` /
    ``partial_threshold``; a citation counts covered/sufficient at claim
    coverage >= ``coverage_threshold`` / ``sufficiency_threshold``.
    """

    kind: JudgeKind = JudgeKind.HEURISTIC
    endpoint_url: Optional[str] = None
    api_key: Optional[str] = None
    model_name: Optional[str] = None
    full_threshold: float = 0.8
    partial_threshold: float = 0.4
    sufficiency_threshold: float = 0.9
    coverage_threshold: float = 0.5
    max_inflight: int = 4

    def __post_init__(self) -> None:
        if not (0 < self.partial_threshold <= self.full_threshold <= 1):
            raise ValueError(
                f"need 0 < partial_threshold <= full_threshold <= 1, "
                f"got {self.partial_threshold}/{self.full_threshold}"
            )
        if not (0 < self.coverage_threshold <= self.sufficiency_threshold <= 1):
            raise ValueError(
                f"need 0 < coverage_threshold <= sufficiency_threshold <= 1, "
                f"got {self.coverage_threshold}/{self.sufficiency_threshold}"
            )
        if self.max_inflight < 1:
            raise ValueError("max_inflight must be >= 1")

    @classmethod
    def from_env(cls, environ: Optional[dict[str, str]] = None, **overrides) -> "JudgeConfig":
        """Build a config from ``NB_*`` environment variables plus overrides."""
        env = os.environ if environ is None else environ
        values: dict = {
            "kind": JudgeKind(env.get("NB_JUDGE", JudgeKind.HEURISTIC.value)),
            "endpoint_url": env.get("NB_LLM_URL"),
            "api_key": env.get("NB_LLM_KEY"),
            "model_name": env.get("NB_LLM_MODEL"),
        }
        if env.get("NB_LLM_MAX_INFLIGHT"):
            values["max_inflight"] = int(env["NB_LLM_MAX_INFLIGHT"])
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


@dataclass(frozen=True)
class AlignmentResult:
    """How well one nugget is represented in one summary.

    ``score`` is 2 (fully present), 1 (partially present) or 0 (missing);
    ``matched_segment`` is the ``[start, end)`` character range of the
    best-matching summary window and exists exactly when score >= 1;
    ``explanation`` names the nugget's content tokens the window lacks
    (empty when nothing is absent).
    """

    nugget_id: str
    score: int
    matched_segment: Optional[tuple[int, int]]
    explanation: str = ""

    def __post_init__(self) -> None:
        if self.score not in (0, 1, 2):
            raise ValueError(f"score must be 0, 1 or 2, got {self.score!r}")
        if (self.matched_segment is not None) != (self.score >= 1):
            raise ValueError("matched_segment must be present exactly when score >= 1")
        if self.matched_segment is not None:
            start, end = self.matched_segment
            if start < 0 or end <= start:
                raise ValueError(f"matched_segment must be a non-empty range, got {self.matched_segment}")


@dataclass(frozen=True)
class CitationVerdict:
    """Three binary judgments for one (claim, cited span) pair.

    ``accurate``: the citation faithfully represents the claim's figures;
    ``covered``: the claim's content appears in the span;
    ``sufficient``: the span alone fully supports the claim.
    """

    accurate: bool
    covered: bool
    sufficient: bool
    rationale: str = ""


class Judge(Protocol):
    config: JudgeConfig

    def extract_nuggets(self, transcript: "Transcript") -> "NuggetBank": ...

    def align_nugget(self, nugget: "Nugget", summary_text: str) -> AlignmentResult: ...

    def align_bank(self, bank: "NuggetBank", summary_text: str) -> dict[str, AlignmentResult]: ...

    def verify_citation(self, claim_text: str, cited_span_text: str) -> CitationVerdict: ...
