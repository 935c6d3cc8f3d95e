"""Remote LLM judge speaking to any OpenAI-compatible chat endpoint.

Requests ask for schema-constrained JSON (``response_format`` with a JSON
schema); responses are validated locally and, on a schema violation, the
judge re-prompts once with the validation error before giving up. Transport
failures are retried with exponential backoff. Whatever the endpoint
returns, no object violating the result-type invariants ever escapes:
out-of-bounds matched segments are clamped and nuggets whose citations do
not resolve are dropped with a recorded warning.
"""

from __future__ import annotations

import json
import logging
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from functools import lru_cache
from importlib import resources
from string import Template

import httpx
import jsonschema

from ..errors import BadSpanRef, JudgeUnavailable, MalformedJudgeResponse, SpanOutOfRange
from ..nuggets import Nugget, NuggetBank, dedupe_bank
from ..transcript import CitationSpan, Line, Transcript, parse_span_ref, resolve_span
from .base import AlignmentResult, CitationVerdict, JudgeConfig

log = logging.getLogger(__name__)

PAGES_PER_CHUNK = 2
OVERLAP_LINES = 5


@lru_cache(maxsize=None)
def _prompt(name: str) -> Template:
    text = resources.files("nuggetbank.data.prompts").joinpath(f"{name}_v1.txt").read_text("utf-8")
    return Template(text)


@lru_cache(maxsize=None)
def _schema(name: str) -> dict:
    text = resources.files("nuggetbank.data.schemas").joinpath(f"{name}.schema.json").read_text("utf-8")
    return json.loads(text)


class RemoteJudge:
    """LLM-backed judge; see :class:`nuggetbank.judge.base.Judge`."""

    _BACKOFF = (1.0, 2.0, 4.0)

    def __init__(self, config: JudgeConfig, transport: httpx.BaseTransport | None = None):
        if not config.endpoint_url:
            raise ValueError("remote judge requires endpoint_url (NB_LLM_URL)")
        self.config = config
        url = config.endpoint_url.rstrip("/")
        if not url.endswith("/chat/completions"):
            url = url + "/chat/completions"
        self._url = url
        self._headers = {"Content-Type": "application/json"}
        if config.api_key:
            self._headers["Authorization"] = f"Bearer {config.api_key}"
        self._client = httpx.Client(timeout=httpx.Timeout(60.0), transport=transport)
        self._gate = threading.BoundedSemaphore(config.max_inflight)
        self._warnings_lock = threading.Lock()
        self.warnings: list[str] = []

    def _warn(self, message: str) -> None:
        log.warning(message)
        with self._warnings_lock:
            self.warnings.append(message)

    # -- transport ---------------------------------------------------------

    def _request(self, messages: list[dict], schema_name: str) -> str:
        schema = _schema(schema_name)
        payload = {
            "model": self.config.model_name or "default",
            "temperature": 0,
            "messages": messages,
            "response_format": {
                "type": "json_schema",
                "json_schema": {"name": schema["title"], "schema": schema, "strict": True},
            },
        }
        last_error = "unknown error"
        for attempt in range(len(self._BACKOFF) + 1):
            if attempt:
                time.sleep(self._BACKOFF[attempt - 1])
            try:
                with self._gate:
                    response = self._client.post(self._url, json=payload, headers=self._headers)
                if response.status_code != 200:
                    last_error = f"HTTP {response.status_code} from {self._url}"
                    continue
                body = response.json()
                return body["choices"][0]["message"]["content"]
            except (httpx.HTTPError, ValueError, KeyError, IndexError, TypeError) as exc:
                last_error = f"{type(exc).__name__}: {exc}"
        raise JudgeUnavailable(f"judge endpoint failed after retries: {last_error}")

    def _structured(self, messages: list[dict], schema_name: str) -> dict:
        """Request, validate against the response schema, repair once."""
        schema = _schema(schema_name)
        content = self._request(messages, schema_name)
        try:
            data = json.loads(content)
            jsonschema.validate(data, schema)
            return data
        except (json.JSONDecodeError, jsonschema.ValidationError) as exc:
            error = str(exc).splitlines()[0]
        repair = _prompt("repair").substitute(error=error)
        repaired_messages = messages + [
            {"role": "assistant", "content": content},
            {"role": "user", "content": repair},
        ]
        content = self._request(repaired_messages, schema_name)
        try:
            data = json.loads(content)
            jsonschema.validate(data, schema)
            return data
        except (json.JSONDecodeError, jsonschema.ValidationError) as exc:
            raise MalformedJudgeResponse(
                f"response failed {schema_name} schema after repair: {str(exc).splitlines()[0]}"
            ) from exc

    # -- extraction --------------------------------------------------------

    def extract_nuggets(self, transcript: Transcript) -> NuggetBank:
        candidates: list[tuple[CitationSpan, str, tuple[CitationSpan, ...]]] = []
        for chunk in _chunk_lines(transcript):
            prompt = _prompt("extract").substitute(chunk=_render_chunk(chunk))
            data = self._structured([{"role": "user", "content": prompt}], "extract_response")
            for item in data["nuggets"]:
                text = " ".join(item["text"].split())
                if not text:
                    self._warn("dropped nugget with empty text")
                    continue
                spans: list[CitationSpan] = []
                for ref in item["citations"]:
                    try:
                        span = parse_span_ref(ref)
                        resolve_span(transcript, span)
                    except (BadSpanRef, SpanOutOfRange) as exc:
                        self._warn(f"dropped citation {ref!r} for nugget {text[:40]!r}: {exc}")
                        continue
                    spans.append(span)
                if not spans:
                    self._warn(f"dropped nugget with no resolvable citation: {text[:60]!r}")
                    continue
                candidates.append((min(spans), text, tuple(spans)))
        candidates.sort(key=lambda c: (c[0], c[1]))
        bank = NuggetBank(
            transcript_id=transcript.id,
            nuggets=tuple(
                Nugget(id=f"n{index + 1}", text=text, citations=spans)
                for index, (_, text, spans) in enumerate(candidates)
            ),
        )
        deduped = dedupe_bank(bank)
        # renumber so ids stay contiguous after duplicates merge
        return NuggetBank(
            transcript_id=deduped.transcript_id,
            nuggets=tuple(
                replace(nugget, id=f"n{index + 1}") for index, nugget in enumerate(deduped.nuggets)
            ),
        )

    # -- alignment ---------------------------------------------------------

    def align_nugget(self, nugget: Nugget, summary_text: str) -> AlignmentResult:
        if not summary_text.strip():
            raise ValueError("summary text is empty")
        prompt = _prompt("align").substitute(nugget=nugget.text, summary=summary_text)
        data = self._structured([{"role": "user", "content": prompt}], "align_response")
        score = data["score"]
        matched = None
        if score >= 1:
            matched = _clamp_segment(data["matched_start"], data["matched_end"], len(summary_text))
        return AlignmentResult(
            nugget_id=nugget.id,
            score=score,
            matched_segment=matched,
            explanation=data["explanation"],
        )

    def align_bank(self, bank: NuggetBank, summary_text: str) -> dict[str, AlignmentResult]:
        """Fan out per-nugget calls; results keyed in bank order regardless of completion."""
        with ThreadPoolExecutor(max_workers=self.config.max_inflight) as pool:
            results = list(pool.map(lambda n: self.align_nugget(n, summary_text), bank.nuggets))
        return {nugget.id: result for nugget, result in zip(bank.nuggets, results)}

    # -- citation verification ---------------------------------------------

    def verify_citation(self, claim_text: str, cited_span_text: str) -> CitationVerdict:
        if not claim_text.strip() or not cited_span_text.strip():
            raise ValueError("claim and cited span must be non-empty")
        prompt = _prompt("verify").substitute(claim=claim_text, span=cited_span_text)
        data = self._structured([{"role": "user", "content": prompt}], "verify_response")
        return CitationVerdict(
            accurate=data["accurate"],
            covered=data["covered"],
            sufficient=data["sufficient"],
            rationale=data["rationale"],
        )


def _clamp_segment(start, end, length: int) -> tuple[int, int]:
    """Coerce a reported character range into a non-empty in-bounds one."""
    if start is None or end is None:
        return (0, length)
    start = max(0, min(int(start), length - 1))
    end = max(start + 1, min(int(end), length))
    return (start, end)


def _chunk_lines(transcript: Transcript) -> list[list[tuple[int, Line]]]:
    """Split into 2-page chunks, each prefixed with the previous 5 lines."""
    all_lines = list(transcript.iter_lines())
    chunks: list[list[tuple[int, Line]]] = []
    offset = 0
    for index in range(0, len(transcript.pages), PAGES_PER_CHUNK):
        group = transcript.pages[index : index + PAGES_PER_CHUNK]
        count = sum(len(page.lines) for page in group)
        overlap = all_lines[max(0, offset - OVERLAP_LINES) : offset]
        chunks.append(overlap + all_lines[offset : offset + count])
        offset += count
    return chunks


def _render_chunk(lines: list[tuple[int, Line]]) -> str:
    return "\n".join(f"{page}:{line.number} {line.text}" for page, line in lines)
