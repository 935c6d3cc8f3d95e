"""File-backed persistence for transcripts, banks and sessions.

Layout under the data directory:

    transcripts/<tid>.tsv        normalized transcript text
    transcripts/<tid>.meta.json  title/deponent sidecar
    banks/<tid>.json             nugget bank document
    sessions/<sid>.json          session record

Every write goes through a temp file plus rename, so a crashed writer never
leaves a partial document behind. Callers serialize read-modify-write cycles
on one session through :meth:`FileStore.session_lock`.
"""

from __future__ import annotations

import threading
from pathlib import Path
from typing import Optional

from ..errors import CorruptRecord, StoreUnavailable
from ..nuggets import NuggetBank
from ..serialization import (
    bank_from_dict,
    bank_to_dict,
    canonical_json,
    load_json,
    write_text_atomic,
)
from ..transcript import Transcript, TranscriptFormat, parse_transcript


class FileStore:
    def __init__(self, root: Path | str) -> None:
        self.root = Path(root)
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()
        try:
            for child in ("transcripts", "banks", "sessions"):
                (self.root / child).mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise StoreUnavailable(f"cannot create data directory {self.root}: {exc}") from exc

    # -- transcripts ---------------------------------------------------------

    def _transcript_path(self, transcript_id: str) -> Path:
        return self.root / "transcripts" / f"{transcript_id}.tsv"

    def _meta_path(self, transcript_id: str) -> Path:
        return self.root / "transcripts" / f"{transcript_id}.meta.json"

    def put_transcript(self, transcript: Transcript) -> None:
        meta = {
            "id": transcript.id,
            "title": transcript.title,
            "deponent": transcript.deponent,
        }
        try:
            write_text_atomic(self._transcript_path(transcript.id), transcript.to_normalized())
            write_text_atomic(self._meta_path(transcript.id), canonical_json(meta))
        except OSError as exc:
            raise StoreUnavailable(f"cannot persist transcript: {exc}") from exc

    def has_transcript(self, transcript_id: str) -> bool:
        return self._transcript_path(transcript_id).is_file()

    def get_transcript(self, transcript_id: str) -> Optional[Transcript]:
        path = self._transcript_path(transcript_id)
        if not path.is_file():
            return None
        meta: dict = {}
        meta_path = self._meta_path(transcript_id)
        if meta_path.is_file():
            meta = load_json(meta_path, "transcript metadata")
        try:
            return parse_transcript(
                path.read_text("utf-8"),
                TranscriptFormat.NORMALIZED,
                transcript_id=transcript_id,
                title=meta.get("title"),
                deponent=meta.get("deponent"),
            )
        except OSError as exc:
            raise StoreUnavailable(f"cannot read transcript {transcript_id}: {exc}") from exc

    def list_transcripts(self) -> list[str]:
        folder = self.root / "transcripts"
        return sorted(path.stem for path in folder.glob("*.tsv"))

    # -- nugget banks ----------------------------------------------------------

    def _bank_path(self, transcript_id: str) -> Path:
        return self.root / "banks" / f"{transcript_id}.json"

    def put_bank(self, bank: NuggetBank) -> None:
        try:
            write_text_atomic(self._bank_path(bank.transcript_id), canonical_json(bank_to_dict(bank)))
        except OSError as exc:
            raise StoreUnavailable(f"cannot persist bank: {exc}") from exc

    def get_bank(self, transcript_id: str) -> Optional[NuggetBank]:
        path = self._bank_path(transcript_id)
        if not path.is_file():
            return None
        return bank_from_dict(load_json(path, "nugget bank"))

    # -- sessions ---------------------------------------------------------------

    def _session_path(self, session_id: str) -> Path:
        return self.root / "sessions" / f"{session_id}.json"

    def session_lock(self, session_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(session_id, threading.Lock())

    def put_session(self, record: dict) -> None:
        session_id = record["id"]
        try:
            write_text_atomic(self._session_path(session_id), canonical_json(record))
        except OSError as exc:
            raise StoreUnavailable(f"cannot persist session {session_id}: {exc}") from exc

    def get_session(self, session_id: str) -> Optional[dict]:
        path = self._session_path(session_id)
        if not path.is_file():
            return None
        data = load_json(path, f"session {session_id}")
        if not isinstance(data.get("id"), str) or data.get("status") not in {
            "pending",
            "running",
            "ready",
            "failed",
        }:
            raise CorruptRecord(f"session {session_id}: missing id or status")
        return data

    def list_sessions(self) -> list[str]:
        folder = self.root / "sessions"
        return sorted(path.stem for path in folder.glob("*.json"))
