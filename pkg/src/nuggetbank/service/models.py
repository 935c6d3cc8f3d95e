"""Request and response bodies for the HTTP API."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, field_validator

from ..nuggets import Importance
from ..transcript import TranscriptFormat


class TranscriptCreate(BaseModel):
    text: str
    format: TranscriptFormat = TranscriptFormat.PAGE_MARKED
    title: Optional[str] = None
    deponent: Optional[str] = None
    allow_page_gaps: bool = False


class TranscriptCreated(BaseModel):
    transcript_id: str


class SpanOut(BaseModel):
    ref: str
    text: str


class NuggetIn(BaseModel):
    id: str
    text: str
    citations: list[str] = Field(min_length=1)
    importance: Importance = Importance.UNLABELED


class BankIn(BaseModel):
    transcript_id: str
    nuggets: list[NuggetIn]


class SessionCreate(BaseModel):
    kind: Literal["comparison", "refinement"]
    transcript_id: str
    summaries: list[str] = Field(min_length=1, max_length=2)

    @field_validator("summaries")
    @classmethod
    def _non_blank(cls, value: list[str]) -> list[str]:
        for text in value:
            if not text.strip():
                raise ValueError("summary text must not be blank")
        return value


class SessionCreated(BaseModel):
    session_id: str
    status: str


class ImportancePatch(BaseModel):
    importance: Importance


class ErrorBody(BaseModel):
    code: str
    message: str
