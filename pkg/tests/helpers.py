"""Shared builders for the test suite."""

from __future__ import annotations

import time

from nuggetbank.transcript import Transcript, TranscriptFormat, parse_transcript

MINI_PAGE_MARKED = "=== PAGE 1 ===\n1 Q. State your name.\n2 A. Jane Doe.\n"


def make_page_marked(pages: list[list[str]], numbered: bool = True) -> str:
    """Render page/line lists as PageMarked raw text."""
    out: list[str] = []
    for page_number, lines in enumerate(pages, start=1):
        out.append(f"=== PAGE {page_number} ===")
        for line_number, text in enumerate(lines, start=1):
            out.append(f"{line_number} {text}" if numbered else text)
    return "\n".join(out) + "\n"


def make_transcript(pages: list[list[str]], **kwargs) -> Transcript:
    return parse_transcript(make_page_marked(pages), TranscriptFormat.PAGE_MARKED, **kwargs)


def wait_for_status(client, session_id: str, done=("ready", "failed"), timeout: float = 30.0) -> dict:
    """Poll a session until it reaches a terminal status."""
    deadline = time.monotonic() + timeout
    while True:
        response = client.get(f"/api/sessions/{session_id}")
        assert response.status_code == 200, response.text
        record = response.json()
        if record["status"] in done:
            return record
        if time.monotonic() > deadline:
            raise AssertionError(f"session stuck in {record['status']!r}")
        time.sleep(0.02)
