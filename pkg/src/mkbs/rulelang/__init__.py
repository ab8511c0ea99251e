"""Knowledge-base language: data model, parser, validator, serializer."""

from .ast import (
    ALL,
    ANY,
    ERROR,
    TEST,
    WARNING,
    AVPair,
    Askable,
    Diagnostic,
    KbError,
    KbSemanticError,
    KbSyntaxError,
    KnowledgeBase,
    Loc,
    Premise,
    Rule,
    Triple,
    Value,
    format_cf,
    format_value,
    is_valid_cf,
)
from .parser import parse_kb
from .serialize import format_avpair, format_premise, format_rule, serialize_kb
from .validate import validate_kb

__all__ = [
    "ALL",
    "ANY",
    "ERROR",
    "TEST",
    "WARNING",
    "AVPair",
    "Askable",
    "Diagnostic",
    "KbError",
    "KbSemanticError",
    "KbSyntaxError",
    "KnowledgeBase",
    "Loc",
    "Premise",
    "Rule",
    "Triple",
    "Value",
    "format_avpair",
    "format_cf",
    "format_premise",
    "format_rule",
    "format_value",
    "is_valid_cf",
    "parse_kb",
    "serialize_kb",
    "validate_kb",
]
