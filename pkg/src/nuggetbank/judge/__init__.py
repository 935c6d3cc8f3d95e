"""Judging capabilities: nugget extraction, alignment, citation verification.

Two interchangeable implementations sit behind :func:`get_judge`: the
deterministic :class:`HeuristicJudge` (default, offline) and the
:class:`RemoteJudge` (any OpenAI-compatible chat endpoint). Module-level
functions are one-shot conveniences over a fresh judge.
"""

from __future__ import annotations

from ..nuggets import Nugget, NuggetBank
from ..transcript import Transcript
from .base import AlignmentResult, CitationVerdict, Judge, JudgeConfig, JudgeKind
from .heuristic import HeuristicJudge
from .remote import RemoteJudge
from ..textops import normalize_tokens, segment_sentences

__all__ = [
    "AlignmentResult",
    "CitationVerdict",
    "HeuristicJudge",
    "Judge",
    "JudgeConfig",
    "JudgeKind",
    "RemoteJudge",
    "align_nugget",
    "extract_nuggets",
    "get_judge",
    "normalize_tokens",
    "segment_sentences",
    "verify_citation",
]


def get_judge(config: JudgeConfig | None = None) -> Judge:
    config = config or JudgeConfig()
    if config.kind is JudgeKind.REMOTE:
        return RemoteJudge(config)
    return HeuristicJudge(config)


def extract_nuggets(transcript: Transcript, config: JudgeConfig | None = None) -> NuggetBank:
    return get_judge(config).extract_nuggets(transcript)


def align_nugget(nugget: Nugget, summary_text: str, config: JudgeConfig | None = None) -> AlignmentResult:
    return get_judge(config).align_nugget(nugget, summary_text)


def verify_citation(
    claim_text: str, cited_span_text: str, config: JudgeConfig | None = None
) -> CitationVerdict:
    return get_judge(config).verify_citation(claim_text, cited_span_text)
