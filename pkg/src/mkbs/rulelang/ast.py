"""Core data model for knowledge bases: rules, askables, goals, net triples.

Everything here is an immutable value object. Source locations ride along for
diagnostics but are excluded from structural comparison, so a parsed knowledge
base compares equal to the same knowledge base built in code or re-parsed from
its own serialization.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

IDENT_RE = re.compile(r"[a-z][a-z0-9_]*\Z")

# Reserved words of the KB language; not usable as attribute/value identifiers.
KEYWORDS = frozenset(
    {"rule", "askable", "goal", "net", "if", "then", "cf", "prompt", "menu", "and", "or"}
)

# Premise node kinds.
ALL = "all"
ANY = "any"
TEST = "test"

Value = str | int | float


def is_identifier(text: str) -> bool:
    return bool(IDENT_RE.match(text)) and text not in KEYWORDS


def is_valid_cf(value: float) -> bool:
    """True when value is a usable certainty factor: finite and in [0, 1]."""
    return isinstance(value, (int, float)) and math.isfinite(value) and 0.0 <= value <= 1.0


@dataclass(frozen=True, slots=True)
class Loc:
    """1-based line/column of a token in KB source."""

    line: int
    col: int

    def __str__(self) -> str:
        return f"{self.line}:{self.col}"


@dataclass(frozen=True, slots=True)
class AVPair:
    """An attribute-value test or fact, e.g. fever = yes."""

    attribute: str
    value: Value

    def __str__(self) -> str:
        return f"{self.attribute} = {format_value(self.value)}"


@dataclass(frozen=True, slots=True)
class Premise:
    """A condition tree: ALL/ANY combinators over attribute-value TEST leaves."""

    kind: str
    children: tuple[Premise, ...] = ()
    test: AVPair | None = None

    @staticmethod
    def of_test(avpair: AVPair) -> Premise:
        return Premise(TEST, test=avpair)

    @staticmethod
    def all_of(children: list[Premise] | tuple[Premise, ...]) -> Premise:
        """Conjunction; a single child collapses to the child itself."""
        if not children:
            raise ValueError("conjunction needs at least one child")
        if len(children) == 1:
            return children[0]
        return Premise(ALL, children=tuple(children))

    @staticmethod
    def any_of(children: list[Premise] | tuple[Premise, ...]) -> Premise:
        """Disjunction; a single child collapses to the child itself."""
        if not children:
            raise ValueError("disjunction needs at least one child")
        if len(children) == 1:
            return children[0]
        return Premise(ANY, children=tuple(children))

    def leaves(self) -> list[AVPair]:
        """All TEST avpairs in left-to-right order."""
        if self.kind == TEST:
            assert self.test is not None
            return [self.test]
        out: list[AVPair] = []
        for child in self.children:
            out.extend(child.leaves())
        return out


@dataclass(frozen=True, slots=True)
class Rule:
    id: str
    premise: Premise
    conclusion: AVPair
    cf: float
    loc: Loc | None = field(default=None, compare=False)


@dataclass(frozen=True, slots=True)
class Askable:
    """Declares that an attribute may be asked of the user.

    The prompt may contain the placeholders {value} and {attribute}, which are
    interpolated when a concrete question is generated.
    """

    attribute: str
    prompt: str
    menu: tuple[Value, ...] | None = None
    loc: Loc | None = field(default=None, compare=False)


@dataclass(frozen=True, slots=True)
class Triple:
    """A semantic-net edge relation(subject, object); `isa` edges form the hierarchy."""

    relation: str
    subject: str
    object: str
    loc: Loc | None = field(default=None, compare=False)


@dataclass(frozen=True, slots=True)
class KnowledgeBase:
    """An immutable knowledge-base snapshot.

    Rule order is significant: it is the conflict-resolution order the engine
    uses when several rules conclude the same attribute.
    """

    rules: tuple[Rule, ...] = ()
    askables: dict[str, Askable] = field(default_factory=dict)
    goals: tuple[str, ...] = ()
    triples: tuple[Triple, ...] = ()
    revision: int = field(default=1, compare=False)

    def rule_index(self, rule_id: str) -> int | None:
        for i, rule in enumerate(self.rules):
            if rule.id == rule_id:
                return i
        return None

    def conclusion_values(self, attribute: str) -> list[Value]:
        """Distinct values concluded for an attribute, in rule order."""
        seen: list[Value] = []
        for rule in self.rules:
            if rule.conclusion.attribute == attribute and rule.conclusion.value not in seen:
                seen.append(rule.conclusion.value)
        return seen

    def concluded_attributes(self) -> set[str]:
        return {rule.conclusion.attribute for rule in self.rules}


ERROR = "error"
WARNING = "warning"


@dataclass(frozen=True, slots=True)
class Diagnostic:
    severity: str
    code: str
    message: str
    loc: Loc | None = None

    def render(self) -> str:
        where = str(self.loc) if self.loc else "-"
        return f"{self.severity} {self.code} {where} {self.message}"


class KbError(Exception):
    """Base for knowledge-base loading failures; carries the diagnostics."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        super().__init__("; ".join(d.render() for d in diagnostics))


class KbSyntaxError(KbError):
    """Source text could not be read at all (lexical or grammar violation)."""


class KbSemanticError(KbError):
    """Source parsed but the knowledge base is invalid (CF range, cycles, ...)."""


def format_value(value: Value) -> str:
    """Render a value as KB-language text: bare identifier, number, or quoted string."""
    if isinstance(value, bool):  # bool is an int subclass; never a KB value
        raise TypeError("boolean is not a KB value")
    if isinstance(value, str):
        if is_identifier(value):
            return value
        escaped = value.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'
    if isinstance(value, int):
        return str(value)
    return format_number(float(value))


def format_number(x: float, sig: int = 17) -> str:
    """Positional decimal form of x (never scientific notation) that re-parses exactly."""
    from decimal import Decimal

    text = repr(x) if sig >= 17 else format(x, f".{sig}g")
    if "e" in text or "E" in text:
        text = format(Decimal(text), "f")
    return text


def format_cf(cf: float) -> str:
    """Certainty factor as text, up to 6 significant digits."""
    return format_number(float(cf), sig=6)
