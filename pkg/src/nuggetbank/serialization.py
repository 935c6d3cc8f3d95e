"""Canonical JSON forms for every file-level artifact.

All documents are UTF-8 JSON with sorted keys, two-space indentation and a
trailing newline, so identical values always serialize to identical bytes
(golden-file friendly). Span references appear in their canonical textual
form. Loaders raise :class:`CorruptRecord` on any structural problem.
"""

from __future__ import annotations

import contextlib
import json
import os
import tempfile
from pathlib import Path
from typing import Any

from .analysis import (
    ComparisonReport,
    RefinementReport,
    SummaryDoc,
    SummarySegment,
)
from .errors import BadSpanRef, CorruptRecord
from .judge.base import AlignmentResult, CitationVerdict
from .nuggets import Importance, Nugget, NuggetBank
from .transcript import format_span_ref, parse_span_ref


def canonical_json(value: Any) -> str:
    return json.dumps(value, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_text_atomic(path: Path | str, text: str) -> None:
    """Write via a temp file + rename so readers never observe partial files."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        with contextlib.suppress(FileNotFoundError):
            os.unlink(tmp)
        raise


def _require(data: dict, key: str, kind: str) -> Any:
    if not isinstance(data, dict) or key not in data:
        raise CorruptRecord(f"{kind}: missing key {key!r}")
    return data[key]


# -- nugget banks ------------------------------------------------------------


def bank_to_dict(bank: NuggetBank) -> dict:
    return {
        "transcript_id": bank.transcript_id,
        "nuggets": [
            {
                "id": nugget.id,
                "text": nugget.text,
                "citations": [format_span_ref(span) for span in nugget.citations],
                "importance": nugget.importance.value,
            }
            for nugget in bank.nuggets
        ],
    }


def bank_from_dict(data: dict) -> NuggetBank:
    nuggets = []
    for item in _require(data, "nuggets", "nugget bank"):
        try:
            nuggets.append(
                Nugget(
                    id=str(_require(item, "id", "nugget")),
                    text=str(_require(item, "text", "nugget")),
                    citations=tuple(
                        parse_span_ref(ref) for ref in _require(item, "citations", "nugget")
                    ),
                    importance=Importance(item.get("importance", Importance.UNLABELED.value)),
                )
            )
        except (BadSpanRef, TypeError, ValueError) as exc:
            raise CorruptRecord(f"nugget bank: {exc}") from exc
    return NuggetBank(
        transcript_id=str(_require(data, "transcript_id", "nugget bank")),
        nuggets=tuple(nuggets),
    )


# -- alignment maps ----------------------------------------------------------


def alignment_result_to_dict(result: AlignmentResult) -> dict:
    return {
        "score": result.score,
        "matched_segment": list(result.matched_segment) if result.matched_segment else None,
        "explanation": result.explanation,
    }


def alignment_result_from_dict(nugget_id: str, data: dict) -> AlignmentResult:
    try:
        segment = data.get("matched_segment")
        return AlignmentResult(
            nugget_id=nugget_id,
            score=int(_require(data, "score", "alignment")),
            matched_segment=(int(segment[0]), int(segment[1])) if segment else None,
            explanation=str(data.get("explanation", "")),
        )
    except (TypeError, ValueError, IndexError) as exc:
        raise CorruptRecord(f"alignment for {nugget_id!r}: {exc}") from exc


def alignments_to_dict(
    alignments: dict[str, AlignmentResult],
    *,
    transcript_id: str,
    summary_id: str,
) -> dict:
    return {
        "transcript_id": transcript_id,
        "summary_id": summary_id,
        "alignments": {
            nugget_id: alignment_result_to_dict(result) for nugget_id, result in alignments.items()
        },
    }


def alignments_from_dict(data: dict) -> tuple[str, str, dict[str, AlignmentResult]]:
    raw = _require(data, "alignments", "alignment map")
    alignments = {
        nugget_id: alignment_result_from_dict(nugget_id, item) for nugget_id, item in raw.items()
    }
    return (
        str(_require(data, "transcript_id", "alignment map")),
        str(_require(data, "summary_id", "alignment map")),
        alignments,
    )


# -- citation verdicts --------------------------------------------------------


def verdict_to_dict(verdict: CitationVerdict) -> dict:
    return {
        "accurate": verdict.accurate,
        "covered": verdict.covered,
        "sufficient": verdict.sufficient,
        "rationale": verdict.rationale,
    }


def verdict_from_dict(data: dict) -> CitationVerdict:
    try:
        return CitationVerdict(
            accurate=bool(_require(data, "accurate", "verdict")),
            covered=bool(_require(data, "covered", "verdict")),
            sufficient=bool(_require(data, "sufficient", "verdict")),
            rationale=str(data.get("rationale", "")),
        )
    except (TypeError, ValueError) as exc:
        raise CorruptRecord(f"verdict: {exc}") from exc


def verdicts_to_dict(
    verdicts: dict[int, list[CitationVerdict]],
    *,
    transcript_id: str,
    summary_id: str,
) -> dict:
    return {
        "transcript_id": transcript_id,
        "summary_id": summary_id,
        "segments": {
            str(index): [verdict_to_dict(v) for v in items] for index, items in verdicts.items()
        },
    }


def verdicts_from_dict(data: dict) -> dict[int, list[CitationVerdict]]:
    raw = _require(data, "segments", "verdict map")
    try:
        return {int(index): [verdict_from_dict(v) for v in items] for index, items in raw.items()}
    except (TypeError, ValueError) as exc:
        raise CorruptRecord(f"verdict map: {exc}") from exc


# -- summary documents ---------------------------------------------------------


def summary_doc_to_dict(doc: SummaryDoc) -> dict:
    return {
        "id": doc.id,
        "text": doc.text,
        "segments": [
            {
                "index": segment.index,
                "start": segment.start,
                "end": segment.end,
                "text": segment.text,
                "claim_text": segment.claim_text,
                "citations": [format_span_ref(span) for span in segment.citations],
                "bad_refs": list(segment.bad_refs),
            }
            for segment in doc.segments
        ],
    }


def summary_doc_from_dict(data: dict) -> SummaryDoc:
    try:
        segments = tuple(
            SummarySegment(
                index=int(item["index"]),
                start=int(item["start"]),
                end=int(item["end"]),
                text=str(item["text"]),
                claim_text=str(item["claim_text"]),
                citations=tuple(parse_span_ref(ref) for ref in item["citations"]),
                bad_refs=tuple(item.get("bad_refs", [])),
            )
            for item in _require(data, "segments", "summary doc")
        )
        return SummaryDoc(
            id=str(_require(data, "id", "summary doc")),
            text=str(_require(data, "text", "summary doc")),
            segments=segments,
        )
    except (BadSpanRef, KeyError, TypeError, ValueError) as exc:
        raise CorruptRecord(f"summary doc: {exc}") from exc


# -- reports -------------------------------------------------------------------


def comparison_to_dict(report: ComparisonReport) -> dict:
    return {
        "transcript_id": report.transcript_id,
        "matched": list(report.matched),
        "unique_a": list(report.unique_a),
        "unique_b": list(report.unique_b),
        "missing": list(report.missing),
        "alignments_a": {
            nugget_id: alignment_result_to_dict(result)
            for nugget_id, result in report.alignments_a.items()
        },
        "alignments_b": {
            nugget_id: alignment_result_to_dict(result)
            for nugget_id, result in report.alignments_b.items()
        },
        "stats": {
            "counts": {
                "matched": report.stats.matched,
                "unique_a": report.stats.unique_a,
                "unique_b": report.stats.unique_b,
                "missing": report.stats.missing,
            },
            "coverage_a": report.stats.coverage_a,
            "coverage_b": report.stats.coverage_b,
        },
    }


def refinement_to_dict(report: RefinementReport) -> dict:
    return {
        "transcript_id": report.transcript_id,
        "summary_id": report.summary_id,
        "omissions": [
            {
                "nugget_id": omission.nugget_id,
                "score": omission.score,
                "explanation": omission.explanation,
            }
            for omission in report.omissions
        ],
        "flagged_segments": [
            {
                "segment_index": flagged.segment_index,
                "start": flagged.start,
                "end": flagged.end,
                "verdict": verdict_to_dict(flagged.verdict) if flagged.verdict else None,
                "bad_refs": list(flagged.bad_refs),
                "suggestion_kind": flagged.suggestion_kind,
                "suggestion": flagged.suggestion,
            }
            for flagged in report.flagged_segments
        ],
        "discrepancies": [
            {
                "segment_index": item.segment_index,
                "start": item.start,
                "end": item.end,
                "nugget_id": item.nugget_id,
                "note": item.note,
            }
            for item in report.discrepancies
        ],
    }


def load_json(path: Path | str, kind: str = "document") -> dict:
    try:
        text = Path(path).read_text("utf-8")
    except OSError as exc:
        raise CorruptRecord(f"{kind}: cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CorruptRecord(f"{kind}: invalid JSON in {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise CorruptRecord(f"{kind}: expected a JSON object in {path}")
    return data


def dump_json(path: Path | str, value: Any) -> None:
    write_text_atomic(path, canonical_json(value))
