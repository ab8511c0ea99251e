"""Canonical text form of a knowledge base.

One statement per line, goals first, then askables, rules, and net triples,
each section in stored order. Parenthesization is minimal: a child is wrapped
only when needed to survive re-parsing (an `or` under an `and`, or a combinator
nested under a combinator of the same kind). Certainty factors print with up
to 6 significant digits. Parsing the output reproduces the KB structurally.
"""

from __future__ import annotations

from .ast import (
    ALL,
    ANY,
    TEST,
    AVPair,
    Askable,
    KnowledgeBase,
    Premise,
    Rule,
    Triple,
    format_cf,
    format_value,
)


def serialize_kb(kb: KnowledgeBase) -> str:
    lines: list[str] = []
    for goal in kb.goals:
        lines.append(f"goal {goal} .")
    for askable in kb.askables.values():
        lines.append(format_askable(askable))
    for rule in kb.rules:
        lines.append(format_rule(rule))
    for triple in kb.triples:
        lines.append(format_triple(triple))
    return "".join(line + "\n" for line in lines)


def format_rule(rule: Rule) -> str:
    return (
        f"rule {rule.id}: if {format_premise(rule.premise)} "
        f"then {format_avpair(rule.conclusion)} cf {format_cf(rule.cf)} ."
    )


def format_askable(askable: Askable) -> str:
    text = f"askable {askable.attribute} prompt {_quote(askable.prompt)}"
    if askable.menu is not None:
        text += " menu ( " + " , ".join(format_value(v) for v in askable.menu) + " )"
    return text + " ."


def format_triple(triple: Triple) -> str:
    return f"net {triple.relation} ( {triple.subject} , {triple.object} ) ."


def format_avpair(avpair: AVPair) -> str:
    return f"{avpair.attribute} = {format_value(avpair.value)}"


def format_premise(premise: Premise, parent: str | None = None) -> str:
    if premise.kind == TEST:
        assert premise.test is not None
        return format_avpair(premise.test)
    joiner = " and " if premise.kind == ALL else " or "
    text = joiner.join(format_premise(child, premise.kind) for child in premise.children)
    if _needs_parens(premise.kind, parent):
        return f"({text})"
    return text


def _needs_parens(kind: str, parent: str | None) -> bool:
    if parent is None:
        return False
    if kind == ANY and parent == ALL:
        return True
    return kind == parent  # explicit nesting of a combinator under its own kind


def _quote(text: str) -> str:
    escaped = text.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'
