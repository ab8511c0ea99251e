from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for genkb

from mkbs.rulelang import AVPair, parse_kb

KB_DIR = Path(__file__).parent.parent / "src" / "mkbs" / "kbs"

FLU_ANSWERS = {
    AVPair("fever", "yes"): 0.9,
    AVPair("cough", "yes"): 0.8,
    AVPair("night_sweats", "yes"): 0.0,
    AVPair("sore_throat", "yes"): 0.4,
    AVPair("weight_loss", "yes"): 1.0,  # must never be needed: r2 prunes first
}

FLU_ANSWERS_FILE = """\
% scripted flu scenario
fever = yes : 0.9
cough = yes : 0.8
night_sweats = yes : 0.0
sore_throat = yes : 0.4
"""


@pytest.fixture(scope="session")
def flu_source() -> str:
    return (KB_DIR / "flu_demo.mkb").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def flu_kb(flu_source):
    return parse_kb(flu_source)


@pytest.fixture(scope="session")
def diseases_source() -> str:
    return (KB_DIR / "diseases.mkb").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def diseases_kb(diseases_source):
    return parse_kb(diseases_source)


@pytest.fixture()
def flu_kb_file(tmp_path, flu_source):
    path = tmp_path / "flu_demo.mkb"
    path.write_text(flu_source, encoding="utf-8")
    return path


class SpyProvider:
    """Scripted provider that records every question it is asked."""

    def __init__(self, answers: dict[AVPair, float]):
        self.answers = answers
        self.questions: list[AVPair] = []

    def __call__(self, question):
        self.questions.append(question.avpair)
        return self.answers[question.avpair]


@pytest.fixture()
def flu_provider():
    return SpyProvider(dict(FLU_ANSWERS))
