"""Session records and the background evaluation pipeline.

A session snapshots the nugget bank it was judged against, so later label
edits stay local to the session. Summaries are keyed by role ("a", plus "b"
for comparisons) because two summaries may carry identical text and thus
identical content-derived ids.

Status walks pending -> running -> ready | failed and never regresses.
"""

from __future__ import annotations

import uuid
from datetime import datetime, timezone
from typing import Optional

from ..analysis import (
    build_refinement_report,
    compare_summaries,
    segment_summary,
    summary_id_for,
    verify_summary_citations,
)
from ..errors import NuggetBankError
from ..judge import get_judge
from ..judge.base import JudgeConfig
from ..nuggets import Importance, set_importance
from ..serialization import (
    alignments_from_dict,
    alignments_to_dict,
    bank_from_dict,
    bank_to_dict,
    comparison_to_dict,
    refinement_to_dict,
    summary_doc_from_dict,
    summary_doc_to_dict,
    verdicts_from_dict,
    verdicts_to_dict,
)
from .store import FileStore

COMPARISON = "comparison"
REFINEMENT = "refinement"
ROLES = {COMPARISON: ("a", "b"), REFINEMENT: ("a",)}


class SessionConflict(Exception):
    """Raised when an edit arrives before the session reached a final state."""


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def new_session_record(kind: str, transcript_id: str, summary_texts: list[str]) -> dict:
    roles = ROLES.get(kind)
    if roles is None:
        raise ValueError(f"unknown session kind: {kind!r}")
    if len(summary_texts) != len(roles):
        raise ValueError(
            f"{kind} sessions take exactly {len(roles)} summar"
            f"{'y' if len(roles) == 1 else 'ies'}, got {len(summary_texts)}"
        )
    stamp = _now()
    return {
        "id": f"sess-{uuid.uuid4().hex[:12]}",
        "kind": kind,
        "status": "pending",
        "error": None,
        "transcript_id": transcript_id,
        "summaries": [
            {"role": role, "id": summary_id_for(text), "text": text}
            for role, text in zip(roles, summary_texts)
        ],
        "bank": None,
        "summary_docs": {},
        "alignments": {},
        "verdicts": None,
        "comparison": None,
        "refinement": None,
        "created_at": stamp,
        "updated_at": stamp,
    }


def _mark_failed(store: FileStore, session_id: str, message: str) -> None:
    lock = store.session_lock(session_id)
    with lock:
        record = store.get_session(session_id)
        if record is None or record["status"] in ("ready", "failed"):
            return
        record["status"] = "failed"
        record["error"] = message
        record["updated_at"] = _now()
        store.put_session(record)


def process_session(store: FileStore, judge_config: JudgeConfig, session_id: str) -> None:
    """Run the judging pipeline for one pending session. Worker-thread entry."""
    lock = store.session_lock(session_id)
    with lock:
        record = store.get_session(session_id)
        if record is None or record["status"] != "pending":
            return
        record["status"] = "running"
        record["updated_at"] = _now()
        store.put_session(record)
        kind = record["kind"]
        transcript_id = record["transcript_id"]
        summaries = list(record["summaries"])

    try:
        transcript = store.get_transcript(transcript_id)
        if transcript is None:
            raise NuggetBankError(f"unknown transcript: {transcript_id}")
        judge = get_judge(judge_config)
        bank = store.get_bank(transcript_id)
        if bank is None:
            bank = judge.extract_nuggets(transcript)

        docs = {entry["role"]: segment_summary(entry["text"]) for entry in summaries}
        alignments = {
            entry["role"]: judge.align_bank(bank, entry["text"]) for entry in summaries
        }

        comparison = refinement = verdict_doc = None
        if kind == COMPARISON:
            report = compare_summaries(bank, alignments["a"], alignments["b"])
            comparison = comparison_to_dict(report)
        else:
            doc = docs["a"]
            verdict_map = verify_summary_citations(doc, transcript, judge)
            report = build_refinement_report(doc, bank, alignments["a"], verdict_map)
            refinement = refinement_to_dict(report)
            verdict_doc = verdicts_to_dict(
                verdict_map, transcript_id=transcript_id, summary_id=doc.id
            )
    except NuggetBankError as exc:
        _mark_failed(store, session_id, str(exc))
        return
    except Exception as exc:  # a stuck "running" session would be worse
        _mark_failed(store, session_id, f"internal error: {exc}")
        return

    with lock:
        record = store.get_session(session_id)
        if record is None or record["status"] != "running":
            return
        record["bank"] = bank_to_dict(bank)
        record["summary_docs"] = {
            role: summary_doc_to_dict(doc) for role, doc in docs.items()
        }
        record["alignments"] = {
            role: alignments_to_dict(
                result, transcript_id=transcript_id, summary_id=docs[role].id
            )
            for role, result in alignments.items()
        }
        record["verdicts"] = verdict_doc
        record["comparison"] = comparison
        record["refinement"] = refinement
        record["status"] = "ready"
        record["error"] = None
        record["updated_at"] = _now()
        store.put_session(record)


def patch_importance(
    store: FileStore, session_id: str, nugget_id: str, importance: Importance
) -> Optional[dict]:
    """Relabel one nugget in a ready session; refinement reports recompute
    from cached judgments, never by re-judging. Returns the updated record,
    or None when the session does not exist."""
    lock = store.session_lock(session_id)
    with lock:
        record = store.get_session(session_id)
        if record is None:
            return None
        if record["status"] != "ready":
            raise SessionConflict(f"session is {record['status']}, not ready")

        bank = set_importance(bank_from_dict(record["bank"]), nugget_id, importance)
        record["bank"] = bank_to_dict(bank)
        if record["kind"] == REFINEMENT:
            doc = summary_doc_from_dict(record["summary_docs"]["a"])
            _, _, align = alignments_from_dict(record["alignments"]["a"])
            verdict_map = verdicts_from_dict(record["verdicts"])
            report = build_refinement_report(doc, bank, align, verdict_map)
            record["refinement"] = refinement_to_dict(report)
        record["updated_at"] = _now()
        store.put_session(record)
        return record
