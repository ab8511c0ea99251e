"""Knowledge-base validation.

Errors make a KB unloadable; warnings flag likely authoring mistakes but do
not block anything. Diagnostics come back in a deterministic order (by source
location, then code).

Error codes
    CF_RANGE        rule certainty factor outside [0, 1] or not finite
    DUPLICATE_ID    two rules share an id
    GOAL_CYCLE      an attribute's proof depends on itself through rule premises
    ISA_CYCLE       the semantic net's `isa` edges form a cycle
    MENU_EMPTY      an askable declares an empty menu
    MENU_DUPLICATE  an askable menu repeats a value
    BAD_IDENTIFIER  attribute or rule id does not match [a-z][a-z0-9_]*

Warning codes
    GOAL_UNPROVABLE   a declared goal attribute is concluded by no rule
    LEAF_UNRESOLVED   a premise tests an attribute that is neither askable nor concluded
    RULE_UNREACHABLE  a rule's conclusion attribute is never a goal nor a sub-goal
"""

from __future__ import annotations

from .ast import (
    ERROR,
    TEST,
    WARNING,
    Diagnostic,
    KnowledgeBase,
    Loc,
    Premise,
    Rule,
    is_identifier,
    is_valid_cf,
)


def validate_kb(kb: KnowledgeBase) -> list[Diagnostic]:
    """All diagnostics for a structurally well-formed KB, errors and warnings."""
    diags: list[Diagnostic] = []
    _check_rules(kb, diags)
    _check_askables(kb, diags)
    _check_goal_cycles(kb, diags)
    _check_isa_cycles(kb, diags)
    _check_warnings(kb, diags)
    diags.sort(key=_diag_key)
    return diags


def dependency_graph(kb: KnowledgeBase) -> dict[str, set[str]]:
    """Attribute dependency edges: conclusion attribute -> premise attributes."""
    graph: dict[str, set[str]] = {}
    for rule in kb.rules:
        deps = graph.setdefault(rule.conclusion.attribute, set())
        for leaf in rule.premise.leaves():
            deps.add(leaf.attribute)
    return graph


def _check_rules(kb: KnowledgeBase, diags: list[Diagnostic]) -> None:
    seen: dict[str, Rule] = {}
    for rule in kb.rules:
        if not is_identifier(rule.id):
            diags.append(Diagnostic(ERROR, "BAD_IDENTIFIER", f"bad rule id {rule.id!r}", rule.loc))
        if rule.id in seen:
            diags.append(
                Diagnostic(ERROR, "DUPLICATE_ID", f"rule id {rule.id!r} already defined", rule.loc)
            )
        else:
            seen[rule.id] = rule
        if not is_valid_cf(rule.cf):
            diags.append(
                Diagnostic(
                    ERROR, "CF_RANGE", f"certainty factor {rule.cf!r} outside [0, 1]", rule.loc
                )
            )
        for avpair in [rule.conclusion, *rule.premise.leaves()]:
            if not is_identifier(avpair.attribute):
                diags.append(
                    Diagnostic(
                        ERROR, "BAD_IDENTIFIER", f"bad attribute {avpair.attribute!r}", rule.loc
                    )
                )
        _check_premise_shape(rule.premise, rule, diags)


def _check_premise_shape(premise: Premise, rule: Rule, diags: list[Diagnostic]) -> None:
    if premise.kind == TEST:
        if premise.test is None or premise.children:
            diags.append(
                Diagnostic(ERROR, "BAD_PREMISE", f"malformed test node in rule {rule.id!r}", rule.loc)
            )
        return
    if not premise.children or premise.test is not None:
        diags.append(
            Diagnostic(ERROR, "BAD_PREMISE", f"malformed {premise.kind} node in rule {rule.id!r}", rule.loc)
        )
    for child in premise.children:
        _check_premise_shape(child, rule, diags)


def _check_askables(kb: KnowledgeBase, diags: list[Diagnostic]) -> None:
    for attr, askable in kb.askables.items():
        if not is_identifier(attr):
            diags.append(
                Diagnostic(ERROR, "BAD_IDENTIFIER", f"bad askable attribute {attr!r}", askable.loc)
            )
        if askable.menu is not None:
            if len(askable.menu) == 0:
                diags.append(
                    Diagnostic(ERROR, "MENU_EMPTY", f"menu for {attr!r} is empty", askable.loc)
                )
            elif len(set(askable.menu)) != len(askable.menu):
                diags.append(
                    Diagnostic(ERROR, "MENU_DUPLICATE", f"menu for {attr!r} repeats a value", askable.loc)
                )


def _check_goal_cycles(kb: KnowledgeBase, diags: list[Diagnostic]) -> None:
    graph = dependency_graph(kb)
    cyclic = _nodes_on_cycles(graph)
    for attr in sorted(cyclic):
        loc = _first_conclusion_loc(kb, attr)
        diags.append(
            Diagnostic(ERROR, "GOAL_CYCLE", f"proof of attribute {attr!r} depends on itself", loc)
        )


def _check_isa_cycles(kb: KnowledgeBase, diags: list[Diagnostic]) -> None:
    graph: dict[str, set[str]] = {}
    locs: dict[str, Loc | None] = {}
    for triple in kb.triples:
        if triple.relation != "isa":
            continue
        graph.setdefault(triple.subject, set()).add(triple.object)
        locs.setdefault(triple.subject, triple.loc)
    for node in sorted(_nodes_on_cycles(graph)):
        diags.append(
            Diagnostic(ERROR, "ISA_CYCLE", f"isa hierarchy cycles through {node!r}", locs.get(node))
        )


def _nodes_on_cycles(graph: dict[str, set[str]]) -> set[str]:
    """Nodes that can reach themselves along graph edges."""
    reach: dict[str, set[str]] = {}

    def reachable(start: str) -> set[str]:
        if start in reach:
            return reach[start]
        seen: set[str] = set()
        stack = list(graph.get(start, ()))
        while stack:
            node = stack.pop()
            if node in seen:
                continue
            seen.add(node)
            stack.extend(graph.get(node, ()))
        reach[start] = seen
        return seen

    return {node for node in graph if node in reachable(node)}


def _first_conclusion_loc(kb: KnowledgeBase, attr: str) -> Loc | None:
    for rule in kb.rules:
        if rule.conclusion.attribute == attr:
            return rule.loc
    return None


def _check_warnings(kb: KnowledgeBase, diags: list[Diagnostic]) -> None:
    concluded = kb.concluded_attributes()
    tested: set[str] = set()
    for rule in kb.rules:
        for leaf in rule.premise.leaves():
            tested.add(leaf.attribute)

    for goal in kb.goals:
        if goal not in concluded:
            diags.append(
                Diagnostic(WARNING, "GOAL_UNPROVABLE", f"no rule concludes goal {goal!r}", None)
            )

    reported: set[str] = set()
    for rule in kb.rules:
        for leaf in rule.premise.leaves():
            attr = leaf.attribute
            if attr in concluded or attr in kb.askables or attr in reported:
                continue
            reported.add(attr)
            diags.append(
                Diagnostic(
                    WARNING,
                    "LEAF_UNRESOLVED",
                    f"attribute {attr!r} is neither askable nor concluded by any rule",
                    rule.loc,
                )
            )

    goal_set = set(kb.goals)
    for rule in kb.rules:
        attr = rule.conclusion.attribute
        if attr not in goal_set and attr not in tested:
            diags.append(
                Diagnostic(
                    WARNING,
                    "RULE_UNREACHABLE",
                    f"rule {rule.id!r} concludes {attr!r}, which is neither a goal nor a sub-goal",
                    rule.loc,
                )
            )


def _diag_key(d: Diagnostic) -> tuple:
    loc = d.loc or Loc(0, 0)
    return (loc.line, loc.col, d.code, d.message)
