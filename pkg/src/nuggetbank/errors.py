"""Exception types shared across the package.

Every domain failure raises a subclass of :class:`NuggetBankError` so the
CLI and the HTTP service can map errors to exit codes / status codes in one
place.
"""

from __future__ import annotations


class NuggetBankError(Exception):
    """Base class for all domain errors."""

    code = "error"


class MalformedInput(NuggetBankError):
    """Raw transcript text does not satisfy the declared input format."""

    code = "malformed_input"


class SpanOutOfRange(NuggetBankError):
    """A citation span addresses a page or line the transcript lacks."""

    code = "span_out_of_range"


class BadSpanRef(NuggetBankError):
    """A textual span reference violates the P:L-P:L grammar or its range."""

    code = "bad_span_ref"


class TranscriptMismatch(NuggetBankError):
    """A nugget bank was validated against a transcript it does not cite."""

    code = "transcript_mismatch"


class UnknownNugget(NuggetBankError):
    """A nugget id is not present in the bank."""

    code = "unknown_nugget"


class JudgeUnavailable(NuggetBankError):
    """The remote judge endpoint failed after all retries."""

    code = "judge_unavailable"


class MalformedJudgeResponse(NuggetBankError):
    """The remote judge returned schema-violating output even after repair."""

    code = "malformed_judge_response"


class IncompleteAlignment(NuggetBankError):
    """An alignment map does not cover exactly the bank's nugget ids."""

    code = "incomplete_alignment"


class MissingVerdicts(NuggetBankError):
    """A cited summary segment has no citation verdicts."""

    code = "missing_verdicts"


class StoreUnavailable(NuggetBankError):
    """The persistence directory cannot be read or written."""

    code = "store_unavailable"


class CorruptRecord(NuggetBankError):
    """A stored record failed schema validation at load time."""

    code = "corrupt_record"
