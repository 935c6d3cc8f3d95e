"""FastAPI application factory.

Domain errors surface as ``{code, message}`` bodies with the HTTP status
mapped from the error's code; session judging runs on a worker pool and is
observed by polling the session resource.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from contextlib import asynccontextmanager
from pathlib import Path
from typing import Optional

from fastapi import Body, FastAPI, HTTPException
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from starlette.exceptions import HTTPException as StarletteHTTPException

from ..errors import BadSpanRef, NuggetBankError
from ..judge import get_judge
from ..judge.base import JudgeConfig
from ..nuggets import Nugget, NuggetBank, validate_bank
from ..serialization import bank_to_dict
from ..transcript import (
    format_span_ref,
    parse_span_ref,
    parse_transcript,
    resolve_span,
)
from . import sessions as session_ops
from .models import (
    BankIn,
    ImportancePatch,
    SessionCreate,
    SessionCreated,
    SpanOut,
    TranscriptCreate,
    TranscriptCreated,
)
from .store import FileStore

_STATUS_BY_CODE = {
    "malformed_input": 400,
    "bad_span_ref": 400,
    "span_out_of_range": 404,
    "unknown_nugget": 404,
    "transcript_mismatch": 422,
    "incomplete_alignment": 422,
    "missing_verdicts": 422,
    "judge_unavailable": 503,
    "malformed_judge_response": 502,
    "store_unavailable": 503,
    "corrupt_record": 500,
}


def _error(status_code: int, code: str, message: str) -> HTTPException:
    return HTTPException(status_code, detail={"code": code, "message": message})


def create_app(
    *,
    data_dir: Path | str,
    judge_config: Optional[JudgeConfig] = None,
    static_dir: Optional[Path | str] = None,
) -> FastAPI:
    store = FileStore(data_dir)
    config = judge_config if judge_config is not None else JudgeConfig.from_env()
    executor = ThreadPoolExecutor(max_workers=4, thread_name_prefix="session")

    @asynccontextmanager
    async def lifespan(_: FastAPI):
        yield
        executor.shutdown(wait=True, cancel_futures=True)

    app = FastAPI(title="nuggetbank", lifespan=lifespan)
    app.state.store = store
    app.state.judge_config = config
    app.state.executor = executor

    @app.exception_handler(NuggetBankError)
    async def _domain_error(_, exc: NuggetBankError):
        status = _STATUS_BY_CODE.get(exc.code, 500)
        return JSONResponse({"code": exc.code, "message": str(exc)}, status_code=status)

    @app.exception_handler(StarletteHTTPException)
    async def _http_error(_, exc: StarletteHTTPException):
        detail = exc.detail
        if isinstance(detail, dict) and "code" in detail:
            body = detail
        else:
            body = {"code": "http_error", "message": str(detail)}
        return JSONResponse(body, status_code=exc.status_code)

    @app.exception_handler(RequestValidationError)
    async def _request_error(_, exc: RequestValidationError):
        parts = [
            ".".join(str(loc) for loc in item["loc"]) + ": " + item["msg"]
            for item in exc.errors()[:5]
        ]
        return JSONResponse(
            {"code": "validation_error", "message": "; ".join(parts)}, status_code=422
        )

    @app.get("/api/health")
    def health() -> dict:
        return {"status": "ok"}

    # -- transcripts -----------------------------------------------------------

    @app.post("/api/transcripts", status_code=201, response_model=TranscriptCreated)
    def create_transcript(payload: TranscriptCreate) -> TranscriptCreated:
        transcript = parse_transcript(
            payload.text,
            payload.format,
            title=payload.title,
            deponent=payload.deponent,
            allow_page_gaps=payload.allow_page_gaps,
        )
        store.put_transcript(transcript)
        return TranscriptCreated(transcript_id=transcript.id)

    @app.get("/api/transcripts")
    def list_transcripts() -> dict:
        items = []
        for transcript_id in store.list_transcripts():
            transcript = store.get_transcript(transcript_id)
            if transcript is None:
                continue
            items.append(
                {
                    "id": transcript.id,
                    "title": transcript.title,
                    "deponent": transcript.deponent,
                    "pages": len(transcript.pages),
                    "total_lines": transcript.total_lines,
                }
            )
        return {"transcripts": items}

    @app.get("/api/transcripts/{transcript_id}")
    def get_transcript(transcript_id: str) -> dict:
        transcript = store.get_transcript(transcript_id)
        if transcript is None:
            raise _error(404, "not_found", f"unknown transcript: {transcript_id}")
        return {
            "id": transcript.id,
            "title": transcript.title,
            "deponent": transcript.deponent,
            "total_lines": transcript.total_lines,
            "pages": [
                {
                    "number": page.number,
                    "lines": [
                        {"number": line.number, "turn": line.turn.value, "text": line.text}
                        for line in page.lines
                    ],
                }
                for page in transcript.pages
            ],
        }

    @app.get("/api/transcripts/{transcript_id}/span", response_model=SpanOut)
    def get_span(transcript_id: str, ref: str) -> SpanOut:
        transcript = store.get_transcript(transcript_id)
        if transcript is None:
            raise _error(404, "not_found", f"unknown transcript: {transcript_id}")
        span = parse_span_ref(ref)
        return SpanOut(ref=format_span_ref(span), text=resolve_span(transcript, span))

    # -- nugget banks ------------------------------------------------------------

    @app.post("/api/transcripts/{transcript_id}/nuggets", status_code=202)
    def put_nuggets(transcript_id: str, payload: Optional[BankIn] = Body(None)) -> JSONResponse:
        transcript = store.get_transcript(transcript_id)
        if transcript is None:
            raise _error(404, "not_found", f"unknown transcript: {transcript_id}")
        if payload is None:
            judge = get_judge(config)
            bank = judge.extract_nuggets(transcript)
        else:
            try:
                bank = NuggetBank(
                    transcript_id=payload.transcript_id,
                    nuggets=tuple(
                        Nugget(
                            id=item.id,
                            text=item.text,
                            citations=tuple(parse_span_ref(ref) for ref in item.citations),
                            importance=item.importance,
                        )
                        for item in payload.nuggets
                    ),
                )
            except (BadSpanRef, ValueError) as exc:
                raise _error(422, "invalid_bank", str(exc)) from exc
            issues = validate_bank(bank, transcript)
            if issues:
                raise _error(
                    422, "invalid_bank", "; ".join(issue.message for issue in issues)
                )
        store.put_bank(bank)
        return JSONResponse(bank_to_dict(bank), status_code=202)

    @app.get("/api/transcripts/{transcript_id}/nuggets")
    def get_nuggets(transcript_id: str) -> JSONResponse:
        bank = store.get_bank(transcript_id)
        if bank is None:
            raise _error(404, "not_found", f"no nugget bank for transcript: {transcript_id}")
        return JSONResponse(bank_to_dict(bank))

    # -- sessions -------------------------------------------------------------------

    @app.post("/api/sessions", status_code=201, response_model=SessionCreated)
    def create_session(payload: SessionCreate) -> SessionCreated:
        if not store.has_transcript(payload.transcript_id):
            raise _error(404, "not_found", f"unknown transcript: {payload.transcript_id}")
        try:
            record = session_ops.new_session_record(
                payload.kind, payload.transcript_id, payload.summaries
            )
        except ValueError as exc:
            raise _error(422, "validation_error", str(exc)) from exc
        store.put_session(record)
        executor.submit(session_ops.process_session, store, config, record["id"])
        return SessionCreated(session_id=record["id"], status=record["status"])

    @app.get("/api/sessions/{session_id}")
    def get_session(session_id: str) -> JSONResponse:
        record = store.get_session(session_id)
        if record is None:
            raise _error(404, "not_found", f"unknown session: {session_id}")
        return JSONResponse(record)

    @app.patch("/api/sessions/{session_id}/nuggets/{nugget_id}")
    def patch_nugget(session_id: str, nugget_id: str, payload: ImportancePatch) -> JSONResponse:
        try:
            record = session_ops.patch_importance(
                store, session_id, nugget_id, payload.importance
            )
        except session_ops.SessionConflict as exc:
            raise _error(409, "conflict", str(exc)) from exc
        if record is None:
            raise _error(404, "not_found", f"unknown session: {session_id}")
        return JSONResponse(record["bank"])

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
