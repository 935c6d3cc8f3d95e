"""Command-line pipeline.

Each stage reads and writes plain files, so long transcripts can be
processed step by step and any stage can be rerun in isolation. Exit codes:
0 success, 1 validation or input errors, 2 judge transport failures and
usage errors.
"""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Callable, Optional

import click

from . import __version__
from .analysis import (
    build_refinement_report,
    compare_summaries,
    segment_summary,
    summary_id_for,
    verify_summary_citations,
)
from .errors import JudgeUnavailable, NuggetBankError, TranscriptMismatch
from .judge import get_judge
from .judge.base import JudgeConfig, JudgeKind
from .serialization import (
    alignments_from_dict,
    alignments_to_dict,
    bank_from_dict,
    bank_to_dict,
    comparison_to_dict,
    dump_json,
    load_json,
    refinement_to_dict,
    verdicts_to_dict,
    write_text_atomic,
)
from .transcript import Transcript, TranscriptFormat, parse_transcript

_NORMALIZED_HEADER = "page\tline\tturn\ttext"


def _run(action: Callable[[], None]) -> None:
    try:
        action()
    except JudgeUnavailable as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    except (NuggetBankError, ValueError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)


def _load_transcript(path: Path, *, allow_page_gaps: bool = False) -> Transcript:
    raw = path.read_text("utf-8")
    first_line = raw.split("\n", 1)[0]
    fmt = (
        TranscriptFormat.NORMALIZED
        if first_line.startswith(_NORMALIZED_HEADER)
        else TranscriptFormat.PAGE_MARKED
    )
    return parse_transcript(raw, fmt, allow_page_gaps=allow_page_gaps)


def judge_options(func):
    for option in (
        click.option(
            "--judge",
            "judge_kind",
            type=click.Choice(["heuristic", "remote"]),
            default=None,
            help="judge backend (default: NB_JUDGE env var or heuristic)",
        ),
        click.option("--full-threshold", type=float, default=None),
        click.option("--partial-threshold", type=float, default=None),
        click.option("--coverage-threshold", type=float, default=None),
        click.option("--sufficiency-threshold", type=float, default=None),
    ):
        func = option(func)
    return func


def _config(
    judge_kind: Optional[str],
    full_threshold: Optional[float],
    partial_threshold: Optional[float],
    coverage_threshold: Optional[float],
    sufficiency_threshold: Optional[float],
) -> JudgeConfig:
    return JudgeConfig.from_env(
        kind=JudgeKind(judge_kind) if judge_kind else None,
        full_threshold=full_threshold,
        partial_threshold=partial_threshold,
        coverage_threshold=coverage_threshold,
        sufficiency_threshold=sufficiency_threshold,
    )


_out_option = click.option(
    "-o",
    "--output",
    type=click.Path(dir_okay=False, path_type=Path),
    required=True,
    help="output file",
)


@click.group()
@click.version_option(__version__, prog_name="nuggetbank")
def main() -> None:
    """Check AI-generated deposition summaries against a nugget bank."""


@main.command()
@click.argument("infile", type=click.Path(dir_okay=False, path_type=Path))
@click.option(
    "--format",
    "fmt",
    type=click.Choice([f.value for f in TranscriptFormat]),
    default=TranscriptFormat.PAGE_MARKED.value,
    show_default=True,
)
@click.option("--allow-page-gaps", is_flag=True, help="tolerate skipped page numbers")
@_out_option
def parse(infile: Path, fmt: str, allow_page_gaps: bool, output: Path) -> None:
    """Convert a transcript into the normalized tab-separated form."""

    def action() -> None:
        transcript = parse_transcript(
            infile.read_text("utf-8"),
            TranscriptFormat(fmt),
            allow_page_gaps=allow_page_gaps,
        )
        write_text_atomic(output, transcript.to_normalized())
        click.echo(
            f"{transcript.id} pages={len(transcript.pages)} lines={transcript.total_lines}"
        )

    _run(action)


@main.command()
@click.argument("transcript_file", type=click.Path(dir_okay=False, path_type=Path))
@judge_options
@_out_option
def extract(transcript_file: Path, output: Path, **judge_kwargs) -> None:
    """Build a nugget bank from a transcript."""

    def action() -> None:
        transcript = _load_transcript(transcript_file)
        judge = get_judge(_config(**judge_kwargs))
        bank = judge.extract_nuggets(transcript)
        dump_json(output, bank_to_dict(bank))
        click.echo(f"{bank.transcript_id} nuggets={len(bank)}")

    _run(action)


@main.command()
@click.argument("bank_file", type=click.Path(dir_okay=False, path_type=Path))
@click.argument("summary_file", type=click.Path(dir_okay=False, path_type=Path))
@judge_options
@_out_option
def align(bank_file: Path, summary_file: Path, output: Path, **judge_kwargs) -> None:
    """Judge which nuggets a summary contains."""

    def action() -> None:
        bank = bank_from_dict(load_json(bank_file, "nugget bank"))
        text = summary_file.read_text("utf-8")
        judge = get_judge(_config(**judge_kwargs))
        alignments = judge.align_bank(bank, text)
        dump_json(
            output,
            alignments_to_dict(
                alignments,
                transcript_id=bank.transcript_id,
                summary_id=summary_id_for(text),
            ),
        )
        scores = [alignments[nugget.id].score for nugget in bank.nuggets]
        click.echo(
            f"fully={scores.count(2)} partially={scores.count(1)} missing={scores.count(0)}"
        )

    _run(action)


@main.command()
@click.argument("transcript_file", type=click.Path(dir_okay=False, path_type=Path))
@click.argument("summary_file", type=click.Path(dir_okay=False, path_type=Path))
@judge_options
@_out_option
def verify(transcript_file: Path, summary_file: Path, output: Path, **judge_kwargs) -> None:
    """Check every inline citation in a summary against the transcript."""

    def action() -> None:
        transcript = _load_transcript(transcript_file)
        doc = segment_summary(summary_file.read_text("utf-8"))
        judge = get_judge(_config(**judge_kwargs))
        verdicts = verify_summary_citations(doc, transcript, judge)
        dump_json(
            output,
            verdicts_to_dict(verdicts, transcript_id=transcript.id, summary_id=doc.id),
        )
        total = sum(len(items) for items in verdicts.values())
        click.echo(f"segments={len(verdicts)} verdicts={total}")

    _run(action)


@main.command()
@click.argument("bank_file", type=click.Path(dir_okay=False, path_type=Path))
@click.argument("align_a_file", type=click.Path(dir_okay=False, path_type=Path))
@click.argument("align_b_file", type=click.Path(dir_okay=False, path_type=Path))
@_out_option
def compare(bank_file: Path, align_a_file: Path, align_b_file: Path, output: Path) -> None:
    """Partition the bank into matched/unique/missing across two summaries."""

    def action() -> None:
        bank = bank_from_dict(load_json(bank_file, "nugget bank"))
        tid_a, _, align_a = alignments_from_dict(load_json(align_a_file, "alignment map"))
        tid_b, _, align_b = alignments_from_dict(load_json(align_b_file, "alignment map"))
        for tid in (tid_a, tid_b):
            if tid != bank.transcript_id:
                raise TranscriptMismatch(
                    f"alignment map is for transcript {tid}, bank is for {bank.transcript_id}"
                )
        report = compare_summaries(bank, align_a, align_b)
        dump_json(output, comparison_to_dict(report))
        stats = report.stats
        click.echo(
            f"matched={stats.matched} unique_a={stats.unique_a} "
            f"unique_b={stats.unique_b} missing={stats.missing} "
            f"coverage_a={stats.coverage_a:.3f} coverage_b={stats.coverage_b:.3f}"
        )

    _run(action)


@main.command()
@click.argument("bank_file", type=click.Path(dir_okay=False, path_type=Path))
@click.argument("summary_file", type=click.Path(dir_okay=False, path_type=Path))
@click.argument("alignments_file", type=click.Path(dir_okay=False, path_type=Path))
@click.option(
    "--transcript",
    "transcript_file",
    type=click.Path(dir_okay=False, path_type=Path),
    required=True,
    help="transcript file, needed for citation checks",
)
@judge_options
@_out_option
def refine(
    bank_file: Path,
    summary_file: Path,
    alignments_file: Path,
    transcript_file: Path,
    output: Path,
    **judge_kwargs,
) -> None:
    """Produce the omission/flagged-citation report for one summary."""

    def action() -> None:
        bank = bank_from_dict(load_json(bank_file, "nugget bank"))
        transcript = _load_transcript(transcript_file)
        if transcript.id != bank.transcript_id:
            raise TranscriptMismatch(
                f"bank is for transcript {bank.transcript_id}, got {transcript.id}"
            )
        text = summary_file.read_text("utf-8")
        doc = segment_summary(text)
        tid, sid, alignments = alignments_from_dict(load_json(alignments_file, "alignment map"))
        if tid != bank.transcript_id:
            raise TranscriptMismatch(
                f"alignment map is for transcript {tid}, bank is for {bank.transcript_id}"
            )
        if sid != doc.id:
            raise TranscriptMismatch(
                f"alignment map is for summary {sid}, this summary is {doc.id}"
            )
        judge = get_judge(_config(**judge_kwargs))
        verdicts = verify_summary_citations(doc, transcript, judge)
        report = build_refinement_report(doc, bank, alignments, verdicts)
        dump_json(output, refinement_to_dict(report))
        click.echo(
            f"omissions={len(report.omissions)} flagged={len(report.flagged_segments)} "
            f"discrepancies={len(report.discrepancies)}"
        )

    _run(action)


@main.command()
@click.option("--addr", default="127.0.0.1:8000", show_default=True, help="host:port to bind")
@click.option(
    "--data-dir",
    type=click.Path(file_okay=False, path_type=Path),
    required=True,
    help="directory for transcripts, banks and sessions",
)
@click.option(
    "--static-dir",
    type=click.Path(file_okay=False, path_type=Path),
    default=None,
    help="directory with the built web UI",
)
@judge_options
def serve(addr: str, data_dir: Path, static_dir: Optional[Path], **judge_kwargs) -> None:
    """Run the HTTP service."""
    host, sep, port = addr.rpartition(":")
    if not sep or not port.isdigit():
        raise click.UsageError(f"--addr must look like host:port, got {addr!r}")

    import uvicorn

    from .service import create_app

    app = create_app(
        data_dir=data_dir,
        judge_config=_config(**judge_kwargs),
        static_dir=static_dir,
    )
    uvicorn.run(app, host=host, port=int(port))
