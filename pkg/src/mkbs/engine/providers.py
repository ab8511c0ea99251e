"""Answer providers: scripted answer files and composition with a fallback.

Answers-file format, one answer per line, `%` starting a comment:

    attribute = value : cf

A scripted provider with no fallback is strict: a question it cannot answer
aborts the consultation with MissingAnswerError. With a fallback (usually an
interactive prompt) unmatched questions fall through instead.
"""

from __future__ import annotations

from ..rulelang import AVPair, Diagnostic, KbSyntaxError, Loc, is_valid_cf
from ..rulelang.parser import tokenize
from .core import AnswerProvider, MissingAnswerError, Question


class ScriptedProvider:
    """Answers questions from a fixed avpair -> cf mapping."""

    def __init__(self, answers: dict[AVPair, float], fallback: AnswerProvider | None = None):
        self.answers = dict(answers)
        self.fallback = fallback

    def __call__(self, question: Question) -> float:
        cf = self.answers.get(question.avpair)
        if cf is not None:
            return cf
        if self.fallback is not None:
            return self.fallback(question)
        raise MissingAnswerError(question)


def parse_answers(source: str) -> dict[AVPair, float]:
    """Parse an answers file into an avpair -> cf mapping."""
    answers: dict[AVPair, float] = {}
    for lineno, line in enumerate(source.splitlines(), start=1):
        stripped = line.split("%", 1)[0].strip()
        if not stripped:
            continue
        tokens = tokenize(stripped)
        # Expected shape: IDENT '=' value ':' NUMBER
        shape = [t.type for t in tokens]
        if (
            len(tokens) != 6
            or shape[0] != "ident"
            or tokens[1].text != "="
            or shape[2] not in ("ident", "string", "number")
            or tokens[3].text != ":"
            or shape[4] != "number"
        ):
            raise KbSyntaxError(
                [
                    Diagnostic(
                        "error",
                        "BAD_ANSWER",
                        f"expected 'attribute = value : cf', got {stripped!r}",
                        Loc(lineno, 1),
                    )
                ]
            )
        cf = float(tokens[4].value)  # type: ignore[arg-type]
        if not is_valid_cf(cf):
            raise KbSyntaxError(
                [
                    Diagnostic(
                        "error",
                        "CF_RANGE",
                        f"answer certainty {tokens[4].text} outside [0, 1]",
                        Loc(lineno, tokens[4].loc.col),
                    )
                ]
            )
        avpair = AVPair(tokens[0].text, tokens[2].value)  # type: ignore[arg-type]
        answers[avpair] = cf
    return answers
