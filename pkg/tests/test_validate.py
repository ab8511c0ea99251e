import random

import pytest

from genkb import random_engine_kb
from mkbs.rulelang import (
    AVPair,
    Askable,
    KbSemanticError,
    KnowledgeBase,
    Premise,
    Rule,
    Triple,
    parse_kb,
    validate_kb,
)
from mkbs.rulelang.validate import dependency_graph


def kb_of(*rules, goals=(), askables=(), triples=()):
    return KnowledgeBase(
        rules=tuple(rules),
        askables={a.attribute: a for a in askables},
        goals=tuple(goals),
        triples=tuple(triples),
    )


def rule(rid, premise_attr, conclusion_attr, cf=0.5):
    return Rule(
        rid,
        Premise.of_test(AVPair(premise_attr, "yes")),
        AVPair(conclusion_attr, "yes"),
        cf,
    )


def codes(diags, severity=None):
    return [d.code for d in diags if severity is None or d.severity == severity]


def test_self_dependency_is_goal_cycle():
    with pytest.raises(KbSemanticError) as exc:
        parse_kb("rule r1: if a = yes then a = yes cf 0.5 .")
    assert any(d.code == "GOAL_CYCLE" and "'a'" in d.message for d in exc.value.diagnostics)


def test_two_step_cycle_detected():
    kb = kb_of(rule("r1", "a", "b"), rule("r2", "b", "a"), goals=["a"])
    diags = validate_kb(kb)
    cycle = [d for d in diags if d.code == "GOAL_CYCLE"]
    assert {d.message.split("'")[1] for d in cycle} == {"a", "b"}


def test_unprovable_goal_is_warning():
    kb = kb_of(goals=["diagnosis"])
    diags = validate_kb(kb)
    assert codes(diags) == ["GOAL_UNPROVABLE"]
    assert diags[0].severity == "warning"


def test_clean_sample_kbs(flu_kb, diseases_kb):
    assert validate_kb(flu_kb) == []
    assert validate_kb(diseases_kb) == []


def test_unresolved_leaf_warning():
    kb = kb_of(
        rule("r1", "mystery", "diagnosis"),
        goals=["diagnosis"],
    )
    assert codes(validate_kb(kb)) == ["LEAF_UNRESOLVED"]


def test_unreachable_rule_warning():
    kb = kb_of(
        rule("r1", "a", "diagnosis"),
        rule("r2", "a", "orphan"),
        goals=["diagnosis"],
        askables=[Askable("a", "a?")],
    )
    diags = validate_kb(kb)
    assert codes(diags) == ["RULE_UNREACHABLE"]
    assert "r2" in diags[0].message


def test_duplicate_rule_ids_flagged():
    kb = kb_of(
        rule("r1", "a", "b"),
        rule("r1", "a", "c"),
        askables=[Askable("a", "a?")],
        goals=["b", "c"],
    )
    assert "DUPLICATE_ID" in codes(validate_kb(kb), "error")


def test_constructed_bad_cf_flagged():
    kb = kb_of(rule("r1", "a", "b", cf=1.5), goals=["b"], askables=[Askable("a", "a?")])
    assert "CF_RANGE" in codes(validate_kb(kb), "error")


def test_isa_cycle_flagged():
    kb = kb_of(
        triples=[
            Triple("isa", "a", "b"),
            Triple("isa", "b", "c"),
            Triple("isa", "c", "a"),
        ]
    )
    diags = validate_kb(kb)
    assert codes(diags) == ["ISA_CYCLE", "ISA_CYCLE", "ISA_CYCLE"]


def test_isa_cycle_rejected_at_parse():
    source = "net isa ( a , b ) .\nnet isa ( b , a ) .\n"
    with pytest.raises(KbSemanticError) as exc:
        parse_kb(source)
    assert all(d.code == "ISA_CYCLE" for d in exc.value.diagnostics)


def test_menu_invariants():
    kb = kb_of(askables=[Askable("a", "a?", menu=())])
    assert "MENU_EMPTY" in codes(validate_kb(kb))
    kb = kb_of(askables=[Askable("a", "a?", menu=("x", "x"))])
    assert "MENU_DUPLICATE" in codes(validate_kb(kb))


def test_diagnostics_ordered_by_location(flu_source):
    source = flu_source + "rule r1: if zzz = yes then diagnosis = flu cf 0.5 .\n"
    with pytest.raises(KbSemanticError) as exc:
        parse_kb(source)
    locs = [(d.loc.line, d.loc.col) for d in exc.value.diagnostics if d.loc]
    assert locs == sorted(locs)


def _cycle_oracle(graph):
    """Floyd-Warshall style reachability closure, independent of the validator."""
    nodes = set(graph) | {n for targets in graph.values() for n in targets}
    reach = {n: set(graph.get(n, ())) for n in nodes}
    changed = True
    while changed:
        changed = False
        for n in nodes:
            new = set()
            for m in reach[n]:
                new |= reach.get(m, set())
            if not new <= reach[n]:
                reach[n] |= new
                changed = True
    return {n for n in graph if n in reach[n]}


def test_cycle_detection_matches_reachability_oracle():
    rng = random.Random(7)
    for _ in range(150):
        kb = random_engine_kb(rng, max_rules=20)
        graph = dependency_graph(kb)
        expected = _cycle_oracle(graph)
        reported = {
            d.message.split("'")[1] for d in validate_kb(kb) if d.code == "GOAL_CYCLE"
        }
        assert reported == expected
    # and on small hand-made cyclic graphs
    kb = kb_of(rule("r1", "a", "b"), rule("r2", "b", "c"), rule("r3", "c", "a"))
    graph = dependency_graph(kb)
    assert _cycle_oracle(graph) == {"a", "b", "c"}
    assert {d.message.split("'")[1] for d in validate_kb(kb) if d.code == "GOAL_CYCLE"} == {"a", "b", "c"}
