"""Acceptance suite: one test per release criterion, at its stated tolerance.

Each test prints a PASS line when it completes (run with -s to stream them);
pytest's own per-test verdict gives the fail line otherwise.
"""

import json
import random
import sys

import pytest

from conftest import FLU_ANSWERS, FLU_ANSWERS_FILE, KB_DIR, SpyProvider
from genkb import (
    oracle_consult,
    random_engine_kb,
    random_text_kb,
    scripted_answers,
)
from mkbs.cli import main as cli_main
from mkbs.editor import EditorError, KbStore
from mkbs.engine import ScriptedProvider, cf_all, cf_any, cf_parallel, cf_rule, consult
from mkbs.engine.trace import RULE
from mkbs.rulelang import AVPair, parse_kb, serialize_kb, validate_kb
from mkbs.semnet import SemanticNet
from mkbs.service import Api

TABLE_1_DISEASES = [
    "cancer", "anxiety_disorders", "balding_and_hair_loss", "thyroid_disorders",
    "heart_attack", "diabetes", "asthma", "erectile_disorders", "migraine",
    "heart_disease", "allergies", "prostate_conditions", "lupus", "skin_disorders",
    "chest_pain", "cohns_disease", "abdominal_pain", "eye_disorders",
    "respiratory_problem", "common_cold", "anxiety", "impotence", "headache",
    "diarrhea", "tonsil", "speech_problem",
]


def report(name: str) -> None:
    print(f"ACCEPTANCE PASS  {name}", file=sys.stderr)


def walk(node):
    yield node
    for child in node.children:
        yield from walk(child)


def test_rule_cf_product_equation():
    """cf_rule is exactly the product, on inputs and in every generated trace."""
    rng = random.Random(101)
    for _ in range(1000):
        a, b = rng.random(), rng.random()
        assert cf_rule(a, b) == a * b
    checked = 0
    for _ in range(100):
        kb = random_engine_kb(rng)
        answers = scripted_answers(rng, kb)
        result = consult(kb, "diagnosis", ScriptedProvider(answers),
                         threshold=rng.choice([0.0, 0.2, 0.4]))
        for candidate in result.candidates:
            for node in walk(candidate.trace):
                if node.kind == RULE:
                    assert node.cf == node.rule_cf * node.premise_cf
                    checked += 1
    assert checked > 100
    report(f"Eq-suite: cf_rule exact on 1000 pairs and {checked} trace rule nodes")


def test_combinator_algebra():
    rng = random.Random(202)
    for _ in range(10000):
        values = [rng.random() for _ in range(rng.randint(1, 6))]
        i = rng.randrange(len(values))
        bumped = list(values)
        bumped[i] = min(1.0, values[i] + rng.random() * (1 - values[i]))
        assert 0.0 <= cf_all(values) <= 1.0
        assert 0.0 <= cf_any(values) <= 1.0
        assert cf_all(bumped) >= cf_all(values)
        assert cf_any(bumped) >= cf_any(values)

        a, b, c = rng.random(), rng.random(), rng.random()
        assert abs(cf_parallel(a, b) - cf_parallel(b, a)) < 1e-12
        assert abs(cf_parallel(cf_parallel(a, b), c) - cf_parallel(a, cf_parallel(b, c))) < 1e-12
        assert max(a, b) - 1e-12 <= cf_parallel(a, b) <= 1.0
        assert cf_parallel(a, 0.0) == a
        assert cf_parallel(0.0, a) == a
        assert cf_parallel(a, 1.0) == 1.0
        assert cf_parallel(1.0, a) == 1.0
    report("combinator algebra: 10000 cases (monotone, bounded, comm/assoc, identity/absorber)")


def _protocol_flu_run(api: Api):
    view = api.dispatch("POST", "/kbs/flu_demo/sessions", {},
                        json.dumps({"goal": "diagnosis"}).encode()).payload
    questions = []
    while view["state"] == "awaiting_answer":
        q = view["question"]
        questions.append(AVPair(q["attribute"], q["value"]))
        body = json.dumps({"question_id": q["question_id"],
                           "cf": FLU_ANSWERS[AVPair(q["attribute"], q["value"])]}).encode()
        view = api.dispatch("POST", f"/sessions/{view['session_id']}/answers", {}, body).payload
    assert view["state"] == "done"
    trace = api.dispatch("GET", f"/sessions/{view['session_id']}/trace", {}, None)
    ranked = [(c["value"], c["cf"]) for c in view["result"]["ranked"]]
    return ranked, questions, trace.body


def test_golden_flu_scenario(tmp_path, capsys, flu_source):
    kb_file = tmp_path / "flu_demo.mkb"
    kb_file.write_text(flu_source, encoding="utf-8")
    answers_file = tmp_path / "flu.answers"
    answers_file.write_text(FLU_ANSWERS_FILE, encoding="utf-8")
    trace_file = tmp_path / "trace.json"

    code = cli_main([
        "consult", str(kb_file), "--goal", "diagnosis",
        "--answers", str(answers_file), "--trace", str(trace_file),
    ])
    cli_out = capsys.readouterr().out
    assert code == 0
    assert cli_out.splitlines() == ["flu 0.56", "common_cold 0.40"]

    api = Api({"flu_demo": KbStore.open(kb_file)})
    ranked, questions, trace_body = _protocol_flu_run(api)
    assert ranked == [("flu", 0.56), ("common_cold", 0.4)]
    assert [f"{v} {cf:.2f}" for v, cf in ranked] == cli_out.splitlines()

    # same questions, no weight_loss, cough exactly once
    assert all(q.attribute != "weight_loss" for q in questions)
    assert sum(1 for q in questions if q.attribute == "cough") == 1
    assert len(questions) == len(set(questions))

    # tb was pruned out, and its trace records the abandoned conjunction
    doc = json.loads(trace_body.decode("utf-8"))
    tb = next(c for c in doc["candidates"] if c["value"] == "tb")
    assert tb["cf"] == 0.0
    pruned_nodes = [n for n in _walk_doc(tb["trace"]) if n["kind"] == "pruned"]
    assert pruned_nodes and pruned_nodes[0]["unevaluated"] == ["weight_loss = yes"]

    # CLI --trace document and protocol trace document are byte-identical
    assert trace_file.read_bytes() == trace_body
    report("golden flu scenario: CLI and protocol agree, [flu 0.56, common_cold 0.40], tb pruned")


def _walk_doc(node):
    yield node
    for child in node["children"]:
        yield from _walk_doc(child)


def test_ask_once_500_random_kbs():
    rng = random.Random(303)
    for _ in range(500):
        kb = random_engine_kb(rng, max_rules=8)
        provider = SpyProvider(scripted_answers(rng, kb))
        consult(kb, "diagnosis", provider, threshold=rng.choice([0.0, 0.1, 0.2, 0.35]))
        assert len(provider.questions) == len(set(provider.questions)), kb
    report("ask-once: 500 random KBs, no question repeated")


def test_oracle_equivalence_500_random_kbs():
    rng = random.Random(404)
    for _ in range(500):
        kb = random_engine_kb(rng, max_rules=8, max_askables=5)
        answers = scripted_answers(rng, kb)
        result = consult(kb, "diagnosis", ScriptedProvider(answers), threshold=0.0)
        expected = oracle_consult(kb, "diagnosis", answers, report_threshold=0.0)
        assert [v for v, _ in result.ranked] == [v for v, _ in expected]
        for (_, got), (_, want) in zip(result.ranked, expected):
            assert abs(got - want) <= 1e-12
    report("oracle equivalence: 500 random KBs match brute force within 1e-12 at threshold 0")


def test_pruning_monotonicity_random_kbs():
    rng = random.Random(505)
    for _ in range(300):
        kb = random_engine_kb(rng)
        answers = scripted_answers(rng, kb)
        t1 = round(rng.uniform(0.0, 0.5), 3)
        t2 = round(rng.uniform(t1, 0.8), 3)
        low, high = SpyProvider(dict(answers)), SpyProvider(dict(answers))
        low_result = consult(kb, "diagnosis", low, threshold=t1, report_threshold=0.0)
        high_result = consult(kb, "diagnosis", high, threshold=t2, report_threshold=0.0)
        assert set(high.questions) <= set(low.questions)
        low_cf = dict(low_result.ranked)
        for value, cf in high_result.ranked:
            assert cf <= low_cf[value] + 1e-12
    report("pruning monotonicity: higher thresholds ask a subset and never raise a cf")


def test_parser_round_trip_1000_kbs():
    rng = random.Random(606)
    for _ in range(1000):
        kb = random_text_kb(rng)
        assert parse_kb(serialize_kb(kb)) == kb
    report("parser round-trip: 1000 generated KBs re-parse structurally identical")


def test_disease_sample_kb_loads_clean(diseases_kb):
    assert validate_kb(diseases_kb) == []
    concluded = {r.conclusion.value for r in diseases_kb.rules}
    net_nodes = {t.subject for t in diseases_kb.triples} | {t.object for t in diseases_kb.triples}
    for name in TABLE_1_DISEASES:
        assert name in concluded or name in net_nodes, name
    report("shipped disease KB: zero diagnostics, all catalogue names present")


def test_semantic_net_oracle_and_lung_cancer():
    from test_semnet import closure_oracle, random_dag

    rng = random.Random(707)
    for _ in range(200):
        net, nodes = random_dag(rng, max_nodes=50)
        for node in rng.sample(nodes, min(6, len(nodes))):
            assert net.ancestors(node) == closure_oracle(net, node, "up")
            assert net.subtypes(node) == closure_oracle(net, node, "down")
            inherited = net.query("prop", node, inherit=True)
            expected = list(dict.fromkeys(
                net.objects("prop", node)
                + [o for a in closure_oracle(net, node, "up") for o in net.objects("prop", a)]
            ))
            assert [r.object for r in inherited.results] == expected

    diseases = parse_kb((KB_DIR / "diseases.mkb").read_text(encoding="utf-8"))
    net = SemanticNet.from_kb(diseases)
    answer = net.query("treatment", "mesothelioma", inherit=True)
    assert [r.object for r in answer.results] == [
        "surgery", "radio_therapy", "chemotherapy", "hormonal_therapy",
    ]
    assert all(r.via == "lung_cancer" for r in answer.results)
    report("semantic net: 200 random DAGs match closure oracle; mesothelioma inherits 4 treatments")


def test_editor_atomicity_and_snapshot_isolation(tmp_path, flu_source):
    kb_file = tmp_path / "flu_demo.mkb"
    kb_file.write_text(flu_source, encoding="utf-8")
    store = KbStore.open(kb_file)
    api = Api({"flu_demo": store})

    # rejected mutations leave the file bytes unchanged
    before = kb_file.read_bytes()
    with pytest.raises(EditorError):  # duplicate id
        store.add_rule(parse_kb("rule r1: if cough = yes then diagnosis = x cf 0.2 .").rules[0])
    assert kb_file.read_bytes() == before
    store.add_rule(parse_kb("rule loop_a: if diagnosis = flu then extra = yes cf 0.5 .").rules[0])
    after_good_edit = kb_file.read_bytes()
    with pytest.raises(EditorError):  # would create a dependency cycle
        store.add_rule(parse_kb("rule loop_b: if extra = yes then diagnosis = flu cf 0.5 .").rules[0])
    assert kb_file.read_bytes() == after_good_edit
    store.undo()

    # a session opened before an edit completes with pre-edit numbers
    pre = api.dispatch("POST", "/kbs/flu_demo/sessions", {},
                       json.dumps({"goal": "diagnosis"}).encode()).payload
    update = api.dispatch(
        "PUT", "/kbs/flu_demo/rules/r1", {},
        json.dumps({"source": "rule r1: if fever = yes and cough = yes then diagnosis = flu cf 0.9 ."}).encode(),
    )
    assert update.status == 200
    post = api.dispatch("POST", "/kbs/flu_demo/sessions", {},
                        json.dumps({"goal": "diagnosis"}).encode()).payload

    def finish(view):
        while view["state"] == "awaiting_answer":
            q = view["question"]
            body = json.dumps({"question_id": q["question_id"],
                               "cf": FLU_ANSWERS[AVPair(q["attribute"], q["value"])]}).encode()
            view = api.dispatch("POST", f"/sessions/{view['session_id']}/answers", {}, body).payload
        return {c["value"]: c["cf"] for c in view["result"]["ranked"]}

    assert finish(pre)["flu"] == 0.56
    assert finish(post)["flu"] == 0.72
    report("editor: rejected mutations leave bytes untouched; snapshots isolate 0.56 vs 0.72")


def test_service_replay_determinism(tmp_path, flu_source):
    bodies = []
    for run in range(2):
        kb_file = tmp_path / f"flu_{run}.mkb"
        kb_file.write_text(flu_source, encoding="utf-8")
        api = Api({"flu_demo": KbStore.open(kb_file)})
        _, _, trace_body = _protocol_flu_run(api)
        bodies.append(trace_body)
    assert bodies[0] == bodies[1]
    report("service replay determinism: identical answer sequences give byte-identical traces")
