"""Backward-chaining inference with certainty factors.

prove() works backward from a goal attribute-value pair: it evaluates every
rule concluding the goal (in knowledge-base order), recursing into sub-goals,
asking the user only for askable attributes nothing concludes, and caching
every answer and derivation in a per-consultation working memory so nothing is
asked or derived twice. Conjunctions are abandoned (pruned) as soon as their
running minimum falls below the threshold, and the questions they would have
asked are never posed.

consult() runs prove over every candidate value for a goal attribute and
returns the ranked results together with the decision-tree traces.
"""

from __future__ import annotations

import json
from collections.abc import Callable
from dataclasses import dataclass, field

from ..rulelang import (
    ALL,
    ANY,
    TEST,
    AVPair,
    Askable,
    KnowledgeBase,
    Premise,
    Value,
    format_avpair,
    format_premise,
    format_value,
    is_valid_cf,
)
from . import trace as tr
from .cf import cf_any, cf_parallel, cf_rule
from .trace import TraceNode

DEFAULT_THRESHOLD = 0.2
DEFAULT_MAX_DEPTH = 64

ASKED = "asked"
DERIVED = "derived"


class ConsultationError(Exception):
    """A consultation could not run to completion."""


class UnknownGoalError(ConsultationError):
    def __init__(self, attribute: str):
        self.attribute = attribute
        super().__init__(f"unknown goal attribute {attribute!r}")


class MissingAnswerError(ConsultationError):
    """A scripted provider had no answer for a question (strict batch mode)."""

    def __init__(self, question: "Question"):
        self.question = question
        super().__init__(f"no scripted answer for {format_avpair(question.avpair)}")


@dataclass(frozen=True, slots=True)
class KnownFact:
    avpair: AVPair
    cf: float
    origin: str  # ASKED or DERIVED


@dataclass(frozen=True, slots=True)
class Question:
    avpair: AVPair
    prompt: str
    menu: tuple[Value, ...] | None = None


# An answer provider maps a question to a certainty factor in [0, 1]:
# 0.0 means "no", 1.0 a plain "yes", anything between a qualified yes.
AnswerProvider = Callable[[Question], float]


class WorkingMemory:
    """Session-scoped fact cache plus the ordered question log.

    Facts are never overwritten within a consultation; attempting to record a
    second fact for the same attribute-value pair is a programming error.
    """

    def __init__(self) -> None:
        self.facts: dict[AVPair, KnownFact] = {}
        self.asked: list[AVPair] = []

    def lookup(self, avpair: AVPair) -> KnownFact | None:
        return self.facts.get(avpair)

    def record(self, avpair: AVPair, cf: float, origin: str) -> KnownFact:
        if avpair in self.facts:
            raise ConsultationError(f"fact {format_avpair(avpair)} recorded twice")
        fact = KnownFact(avpair, cf, origin)
        self.facts[avpair] = fact
        if origin == ASKED:
            self.asked.append(avpair)
        return fact


def render_prompt(askable: Askable, avpair: AVPair) -> str:
    """Askable prompt with {value}/{attribute} placeholders interpolated."""
    text = askable.prompt
    text = text.replace("{value}", format_value(avpair.value))
    text = text.replace("{attribute}", avpair.attribute)
    return text


def prove(
    goal: AVPair,
    kb: KnowledgeBase,
    wm: WorkingMemory,
    provider: AnswerProvider,
    threshold: float = DEFAULT_THRESHOLD,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> tuple[float, TraceNode]:
    """Prove one attribute-value pair; returns its certainty and the trace."""
    return _prove(goal, kb, wm, provider, threshold, max_depth, depth=0)


def _prove(
    goal: AVPair,
    kb: KnowledgeBase,
    wm: WorkingMemory,
    provider: AnswerProvider,
    threshold: float,
    max_depth: int,
    depth: int,
) -> tuple[float, TraceNode]:
    if depth > max_depth:
        raise ConsultationError(
            f"recursion depth {max_depth} exceeded proving {format_avpair(goal)}; "
            "the rule base likely contains a dependency cycle"
        )

    known = wm.lookup(goal)
    if known is not None:
        label = f"{format_avpair(goal)} (known)"
        return known.cf, TraceNode(tr.TEST, label, known.cf)

    rules = [rule for rule in kb.rules if rule.conclusion == goal]
    if rules:
        combined = 0.0
        children: list[TraceNode] = []
        for rule in rules:
            value, node, pruned = _eval_premise(
                rule.premise, kb, wm, provider, threshold, max_depth, depth
            )
            premise_cf = 0.0 if pruned else value
            contribution = cf_rule(rule.cf, premise_cf)
            children.append(
                TraceNode(
                    tr.RULE,
                    f"rule {rule.id}",
                    contribution,
                    children=(node,),
                    rule_id=rule.id,
                    rule_cf=rule.cf,
                    premise_cf=premise_cf,
                )
            )
            combined = cf_parallel(combined, contribution)
        wm.record(goal, combined, DERIVED)
        return combined, TraceNode(tr.GOAL, format_avpair(goal), combined, tuple(children))

    askable = kb.askables.get(goal.attribute)
    if askable is not None:
        question = Question(goal, render_prompt(askable, goal), askable.menu)
        answer = float(provider(question))
        if not is_valid_cf(answer):
            raise ConsultationError(
                f"provider returned certainty {answer!r} for {format_avpair(goal)}"
            )
        wm.record(goal, answer, ASKED)
        _record_menu_zeros(askable, goal, answer, wm)
        return answer, TraceNode(tr.ASK, format_avpair(goal), answer, prompt=question.prompt)

    node = TraceNode(tr.TEST, f"{format_avpair(goal)} (unprovable)", 0.0)
    wm.record(goal, 0.0, DERIVED)
    return 0.0, node


def _record_menu_zeros(askable: Askable, goal: AVPair, answer: float, wm: WorkingMemory) -> None:
    # A positive answer for one menu value rules the others out; a "no" only
    # rules out the value asked about, so the siblings stay open.
    if askable.menu is None or answer <= 0.0:
        return
    for value in askable.menu:
        if value == goal.value:
            continue
        sibling = AVPair(goal.attribute, value)
        if sibling not in wm.facts:
            wm.record(sibling, 0.0, DERIVED)


def _eval_premise(
    premise: Premise,
    kb: KnowledgeBase,
    wm: WorkingMemory,
    provider: AnswerProvider,
    threshold: float,
    max_depth: int,
    depth: int,
) -> tuple[float, TraceNode, bool]:
    """Evaluate a premise tree; returns (certainty, trace node, pruned flag).

    A pruned subtree counts as certainty 0 for the enclosing computation; the
    returned certainty of a pruned node is the partial running minimum, which
    the trace reports.
    """
    if premise.kind == TEST:
        assert premise.test is not None
        value, node = _prove(premise.test, kb, wm, provider, threshold, max_depth, depth + 1)
        return value, node, False

    if premise.kind == ALL:
        children: list[TraceNode] = []
        running = 1.0
        for i, child in enumerate(premise.children):
            value, node, pruned = _eval_premise(
                child, kb, wm, provider, threshold, max_depth, depth
            )
            children.append(node)
            running = min(running, 0.0 if pruned else value)
            remaining = premise.children[i + 1 :]
            if remaining and running < threshold:
                labels = tuple(format_premise(rest) for rest in remaining)
                pruned_node = TraceNode(
                    tr.PRUNED, "and", running, tuple(children), unevaluated=labels
                )
                return running, pruned_node, True
        return running, TraceNode(tr.ALL, "and", running, tuple(children)), False

    assert premise.kind == ANY
    values: list[float] = []
    children = []
    for child in premise.children:
        value, node, pruned = _eval_premise(child, kb, wm, provider, threshold, max_depth, depth)
        values.append(0.0 if pruned else value)
        children.append(node)
    best = cf_any(values)
    return best, TraceNode(tr.ANY, "or", best, tuple(children)), False


@dataclass(frozen=True, slots=True)
class Candidate:
    value: Value
    cf: float
    trace: TraceNode


@dataclass(frozen=True, slots=True)
class ConsultationResult:
    """Outcome of one consultation.

    `ranked` holds only candidates at or above the report threshold, best
    first (ties in first-concluded order); `candidates` holds every evaluated
    candidate in the same order, traces included, for explanation.
    """

    goal: str
    ranked: tuple[tuple[Value, float], ...]
    candidates: tuple[Candidate, ...]
    questions_asked: tuple[AVPair, ...]
    report_threshold: float
    working_memory: WorkingMemory = field(compare=False, repr=False, default_factory=WorkingMemory)


def consult(
    kb: KnowledgeBase,
    goal_attribute: str,
    provider: AnswerProvider,
    threshold: float = DEFAULT_THRESHOLD,
    report_threshold: float | None = None,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> ConsultationResult:
    """Prove every candidate value for a goal attribute and rank the results.

    Candidate values are the distinct conclusion values for the attribute, in
    rule order, proven against one shared working memory so questions are
    never repeated across candidates.
    """
    if report_threshold is None:
        report_threshold = threshold
    candidates_values = kb.conclusion_values(goal_attribute)
    if not candidates_values and goal_attribute not in kb.goals:
        raise UnknownGoalError(goal_attribute)

    wm = WorkingMemory()
    evaluated: list[Candidate] = []
    for value in candidates_values:
        cf, trace = prove(AVPair(goal_attribute, value), kb, wm, provider, threshold, max_depth)
        evaluated.append(Candidate(value, cf, trace))

    ordered = sorted(evaluated, key=lambda c: -c.cf)  # stable: ties keep rule order
    ranked = tuple((c.value, c.cf) for c in ordered if c.cf >= report_threshold)
    return ConsultationResult(
        goal=goal_attribute,
        ranked=ranked,
        candidates=tuple(ordered),
        questions_asked=tuple(wm.asked),
        report_threshold=report_threshold,
        working_memory=wm,
    )


def result_to_jsonable(result: ConsultationResult) -> dict:
    """Trace document body for a whole consultation: {goal, candidates: [...]}."""
    return {
        "goal": result.goal,
        "candidates": [
            {
                "value": candidate.value,
                "cf": tr.round_cf(candidate.cf),
                "trace": tr.trace_to_jsonable(candidate.trace),
            }
            for candidate in result.candidates
        ],
    }


def result_to_document(result: ConsultationResult) -> str:
    """Byte-stable JSON trace document for a consultation."""
    return json.dumps(result_to_jsonable(result), ensure_ascii=False, separators=(",", ":"))
