from __future__ import annotations

from importlib import resources
from pathlib import Path

import pytest

from nuggetbank.judge import HeuristicJudge
from nuggetbank.transcript import TranscriptFormat, parse_transcript

GOLDEN_DIR = Path(__file__).parent / "golden"


def sample(name: str) -> str:
    return resources.files("nuggetbank.data.samples").joinpath(name).read_text("utf-8")


def golden(name: str) -> str:
    return (GOLDEN_DIR / name).read_text("utf-8")


@pytest.fixture(scope="session")
def sample_text() -> str:
    return sample("deposition.txt")


@pytest.fixture(scope="session")
def transcript(sample_text):
    return parse_transcript(sample_text, TranscriptFormat.PAGE_MARKED)


@pytest.fixture(scope="session")
def judge() -> HeuristicJudge:
    return HeuristicJudge()


@pytest.fixture(scope="session")
def bank(judge, transcript):
    return judge.extract_nuggets(transcript)


@pytest.fixture(scope="session")
def summary_a() -> str:
    return sample("summary_a.txt")


@pytest.fixture(scope="session")
def summary_b() -> str:
    return sample("summary_b.txt")
