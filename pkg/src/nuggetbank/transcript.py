"""Page/line-addressable transcript model, parsing, and span resolution.

A transcript is an ordered sequence of pages, each holding contiguously
numbered lines of testimony. Citations into a transcript are inclusive
``page:line`` ranges; this module owns both their in-memory form
(:class:`CitationSpan`) and their canonical textual form (``P:L-P:L``).

Two input formats are supported:

* **page-marked** -- plain text with ``=== PAGE n ===`` marker lines and
  optional leading line numbers (``^\\s*\\d{1,3}\\s``).
* **normalized** -- a tab-separated record per line with the header row
  ``page\\tline\\tturn\\ttext``; serialization round-trips bit-exactly.

PDF/OCR ingestion is out of scope; callers hand in pre-extracted text.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterator, Optional

from .errors import BadSpanRef, MalformedInput, SpanOutOfRange


class TranscriptFormat(str, Enum):
    PAGE_MARKED = "pagemarked"
    NORMALIZED = "normalized"


class Turn(str, Enum):
    """Speaker-turn classification of a transcript line (display metadata)."""

    QUESTION = "question"
    ANSWER = "answer"
    COLLOQUY = "colloquy"
    OTHER = "other"


_QUESTION_PREFIXES = ("Q.", "Q:")
_ANSWER_PREFIXES = ("A.", "A:")
_COLLOQUY_PREFIXES = ("MR.", "MS.", "MRS.", "THE COURT", "THE WITNESS")


def classify_turn(text: str) -> Turn:
    """Classify a line by its first non-space token. Errors are cosmetic."""
    stripped = text.lstrip()
    if stripped.startswith(_QUESTION_PREFIXES):
        return Turn.QUESTION
    if stripped.startswith(_ANSWER_PREFIXES):
        return Turn.ANSWER
    if stripped.startswith(_COLLOQUY_PREFIXES):
        return Turn.COLLOQUY
    return Turn.OTHER


@dataclass(frozen=True, order=True)
class CitationSpan:
    """Inclusive ``(start_page, start_line)`` .. ``(end_page, end_line)`` range."""

    start_page: int
    start_line: int
    end_page: int
    end_line: int

    def __post_init__(self) -> None:
        for value in (self.start_page, self.start_line, self.end_page, self.end_line):
            if not isinstance(value, int) or value < 1:
                raise BadSpanRef(f"span components must be positive integers, got {value!r}")
        if (self.start_page, self.start_line) > (self.end_page, self.end_line):
            raise BadSpanRef(f"inverted span: {self.start_page}:{self.start_line} after {self.end_page}:{self.end_line}")

    @property
    def start(self) -> tuple[int, int]:
        return (self.start_page, self.start_line)

    @property
    def end(self) -> tuple[int, int]:
        return (self.end_page, self.end_line)

    def contains(self, page: int, line: int) -> bool:
        return self.start <= (page, line) <= self.end


@dataclass(frozen=True)
class Line:
    number: int
    text: str
    turn: Turn


@dataclass(frozen=True)
class Page:
    number: int
    lines: tuple[Line, ...]


@dataclass(frozen=True)
class Transcript:
    id: str
    pages: tuple[Page, ...]
    title: Optional[str] = None
    deponent: Optional[str] = None

    @cached_property
    def _page_map(self) -> dict[int, Page]:
        return {page.number: page for page in self.pages}

    @property
    def total_lines(self) -> int:
        return sum(len(page.lines) for page in self.pages)

    def page(self, number: int) -> Optional[Page]:
        return self._page_map.get(number)

    def iter_lines(self) -> Iterator[tuple[int, Line]]:
        """Yield ``(page_number, line)`` in document order."""
        for page in self.pages:
            for line in page.lines:
                yield page.number, line

    def to_normalized(self) -> str:
        """Serialize to the normalized tab-separated format (bit-exact round-trip)."""
        out = [_NORMALIZED_HEADER]
        for page_number, line in self.iter_lines():
            out.append(f"{page_number}\t{line.number}\t{line.turn.value}\t{line.text}")
        return "\n".join(out) + "\n"


_PAGE_MARKER = re.compile(r"^\s*===\s*page\s+(\d+)\s*===\s*$", re.IGNORECASE)
_LINE_NUMBER = re.compile(r"^\s*(\d{1,3})\s+(.*)$")
_NORMALIZED_HEADER = "page\tline\tturn\ttext"


def parse_transcript(
    raw: str,
    fmt: TranscriptFormat | str = TranscriptFormat.PAGE_MARKED,
    *,
    transcript_id: Optional[str] = None,
    allow_page_gaps: bool = False,
    title: Optional[str] = None,
    deponent: Optional[str] = None,
) -> Transcript:
    """Parse raw text into a :class:`Transcript`.

    Page numbers must start at 1 and increase strictly; gaps are rejected
    unless ``allow_page_gaps`` is set. Explicit line numbers, when present,
    must run contiguously from 1 within their page; lines without a number
    are assigned the next one. When ``transcript_id`` is omitted the id is
    derived from the parsed content, so re-parsing the same text (in either
    format) yields the same id.

    Raises :class:`MalformedInput` on any format violation.
    """
    fmt = TranscriptFormat(fmt)
    if not raw.strip():
        raise MalformedInput("empty input")
    if fmt is TranscriptFormat.PAGE_MARKED:
        pages = _parse_page_marked(raw, allow_page_gaps)
    else:
        pages = _parse_normalized(raw, allow_page_gaps)
    return Transcript(
        id=transcript_id or _content_id(pages),
        pages=pages,
        title=title,
        deponent=deponent,
    )


def _parse_page_marked(raw: str, allow_page_gaps: bool) -> tuple[Page, ...]:
    pages: list[Page] = []
    current_number: Optional[int] = None
    current_lines: list[str] = []
    for raw_line in raw.splitlines():
        marker = _PAGE_MARKER.match(raw_line)
        if marker:
            if current_number is not None:
                pages.append(_build_page(current_number, current_lines))
            number = int(marker.group(1))
            _check_page_order(pages[-1].number if pages else None, number, allow_page_gaps)
            current_number = number
            current_lines = []
        elif current_number is None:
            if raw_line.strip():
                raise MalformedInput(f"content before first page marker: {raw_line!r}")
        else:
            current_lines.append(raw_line)
    if current_number is None:
        raise MalformedInput("no page markers found")
    pages.append(_build_page(current_number, current_lines))
    return tuple(pages)


def _check_page_order(previous: Optional[int], number: int, allow_page_gaps: bool) -> None:
    if previous is None:
        if number != 1:
            raise MalformedInput(f"first page must be numbered 1, got {number}")
    elif number <= previous:
        raise MalformedInput(f"page numbers must increase: {number} after {previous}")
    elif number != previous + 1 and not allow_page_gaps:
        raise MalformedInput(f"gap in page numbers: {number} after {previous}")


def _build_page(number: int, raw_lines: list[str]) -> Page:
    lines: list[Line] = []
    for index, raw_line in enumerate(raw_lines):
        expected = index + 1
        numbered = _LINE_NUMBER.match(raw_line)
        if numbered:
            line_number = int(numbered.group(1))
            text = numbered.group(2)
            if line_number != expected:
                kind = "duplicate" if line_number <= len(lines) else "non-contiguous"
                raise MalformedInput(
                    f"page {number}: {kind} line number {line_number} (expected {expected})"
                )
        else:
            text = raw_line
        lines.append(Line(number=expected, text=text, turn=classify_turn(text)))
    if not lines:
        raise MalformedInput(f"page {number} has no lines")
    return Page(number=number, lines=tuple(lines))


def _parse_normalized(raw: str, allow_page_gaps: bool) -> tuple[Page, ...]:
    rows = raw.splitlines()
    if not rows or rows[0] != _NORMALIZED_HEADER:
        raise MalformedInput("missing normalized header row")
    pages: list[Page] = []
    current_number: Optional[int] = None
    current_lines: list[Line] = []

    def flush() -> None:
        if current_number is not None:
            if not current_lines:
                raise MalformedInput(f"page {current_number} has no lines")
            pages.append(Page(number=current_number, lines=tuple(current_lines)))

    for row_index, row in enumerate(rows[1:], start=2):
        parts = row.split("\t", 3)
        if len(parts) != 4:
            raise MalformedInput(f"row {row_index}: expected 4 tab-separated fields")
        page_text, line_text, turn_text, text = parts
        try:
            page_number = int(page_text)
            line_number = int(line_text)
            turn = Turn(turn_text)
        except ValueError as exc:
            raise MalformedInput(f"row {row_index}: {exc}") from exc
        if page_number != current_number:
            flush()
            _check_page_order(current_number, page_number, allow_page_gaps)
            current_number = page_number
            current_lines = []
        expected = len(current_lines) + 1
        if line_number != expected:
            kind = "duplicate" if line_number < expected else "non-contiguous"
            raise MalformedInput(
                f"page {page_number}: {kind} line number {line_number} (expected {expected})"
            )
        current_lines.append(Line(number=line_number, text=text, turn=turn))
    flush()
    if not pages:
        raise MalformedInput("no records after header")
    return tuple(pages)


def to_normalized(transcript: Transcript) -> str:
    """Serialize to the normalized tab-separated format (bit-exact round-trip)."""
    return transcript.to_normalized()


def _content_id(pages: tuple[Page, ...]) -> str:
    digest = hashlib.sha256()
    for page in pages:
        for line in page.lines:
            record = f"{page.number}\x1f{line.number}\x1f{line.turn.value}\x1f{line.text}\x1e"
            digest.update(record.encode("utf-8"))
    return "t" + digest.hexdigest()[:12]


def resolve_span(transcript: Transcript, span: CitationSpan) -> str:
    """Return the newline-joined text of every line the span covers.

    Raises :class:`SpanOutOfRange` when either endpoint addresses a page or
    line the transcript does not contain.
    """
    for label, page_number, line_number in (
        ("start", span.start_page, span.start_line),
        ("end", span.end_page, span.end_line),
    ):
        page = transcript.page(page_number)
        if page is None:
            raise SpanOutOfRange(f"{label} page {page_number} not in transcript {transcript.id}")
        if line_number > len(page.lines):
            raise SpanOutOfRange(
                f"{label} line {page_number}:{line_number} not in transcript {transcript.id}"
            )
    texts = [
        line.text
        for page_number, line in transcript.iter_lines()
        if span.contains(page_number, line.number)
    ]
    return "\n".join(texts)


_SPAN_REF = re.compile(r"^\s*(\d+)\s*:\s*(\d+)\s*(?:-\s*(\d+)\s*:\s*(\d+)\s*)?$")


def parse_span_ref(ref: str) -> CitationSpan:
    """Parse ``"P:L-P:L"`` (or the one-line shorthand ``"P:L"``) into a span."""
    match = _SPAN_REF.match(ref)
    if not match:
        raise BadSpanRef(f"not a span reference: {ref!r}")
    start_page, start_line = int(match.group(1)), int(match.group(2))
    if match.group(3) is None:
        end_page, end_line = start_page, start_line
    else:
        end_page, end_line = int(match.group(3)), int(match.group(4))
    return CitationSpan(start_page, start_line, end_page, end_line)


def format_span_ref(span: CitationSpan) -> str:
    """Render the canonical textual form; inverse of :func:`parse_span_ref`."""
    if span.start == span.end:
        return f"{span.start_page}:{span.start_line}"
    return f"{span.start_page}:{span.start_line}-{span.end_page}:{span.end_line}"
