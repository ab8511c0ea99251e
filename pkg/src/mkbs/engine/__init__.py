"""Backward-chaining inference engine with certainty factors."""

from .cf import cf_all, cf_any, cf_parallel, cf_rule
from .core import (
    ASKED,
    DEFAULT_MAX_DEPTH,
    DEFAULT_THRESHOLD,
    DERIVED,
    AnswerProvider,
    Candidate,
    ConsultationError,
    ConsultationResult,
    KnownFact,
    MissingAnswerError,
    Question,
    UnknownGoalError,
    WorkingMemory,
    consult,
    prove,
    render_prompt,
    result_to_document,
    result_to_jsonable,
)
from .providers import ScriptedProvider, parse_answers
from .trace import TraceNode, round_cf, trace_to_document, trace_to_jsonable

__all__ = [
    "ASKED",
    "DEFAULT_MAX_DEPTH",
    "DEFAULT_THRESHOLD",
    "DERIVED",
    "AnswerProvider",
    "Candidate",
    "ConsultationError",
    "ConsultationResult",
    "KnownFact",
    "MissingAnswerError",
    "Question",
    "ScriptedProvider",
    "TraceNode",
    "UnknownGoalError",
    "WorkingMemory",
    "cf_all",
    "cf_any",
    "cf_parallel",
    "cf_rule",
    "consult",
    "parse_answers",
    "prove",
    "render_prompt",
    "result_to_document",
    "result_to_jsonable",
    "round_cf",
    "trace_to_document",
    "trace_to_jsonable",
]
