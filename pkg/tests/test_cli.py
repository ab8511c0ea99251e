import json
import socket
import subprocess
import sys
import time
import urllib.request

import pytest

from conftest import FLU_ANSWERS_FILE
from mkbs.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---- validate -----------------------------------------------------------------


def test_validate_clean_kb(capsys, flu_kb_file):
    code, out, err = run_cli(capsys, "validate", str(flu_kb_file))
    assert code == 0
    assert err == ""


def test_validate_semantic_error_exit_1(capsys, tmp_path):
    path = tmp_path / "bad.mkb"
    path.write_text("rule r1: if a = 1 then b = 2 cf 1.5 .\n", encoding="utf-8")
    code, out, err = run_cli(capsys, "validate", str(path))
    assert code == 1
    lines = [l for l in err.splitlines() if l]
    assert len(lines) == 1 and lines[0].startswith("error CF_RANGE 1:")


def test_validate_warnings_allowed(capsys, tmp_path):
    path = tmp_path / "warn.mkb"
    path.write_text("goal diagnosis .\n", encoding="utf-8")
    code, out, err = run_cli(capsys, "validate", str(path))
    assert code == 0
    assert "warning GOAL_UNPROVABLE" in err


def test_validate_missing_file_exit_2(capsys, tmp_path):
    code, _, err = run_cli(capsys, "validate", str(tmp_path / "missing.mkb"))
    assert code == 2
    assert "cannot read" in err


def test_validate_syntax_error_exit_2(capsys, tmp_path):
    path = tmp_path / "broken.mkb"
    path.write_text("rule r1 if broken", encoding="utf-8")
    code, _, err = run_cli(capsys, "validate", str(path))
    assert code == 2
    assert "error SYNTAX" in err


# ---- consult -------------------------------------------------------------------


@pytest.fixture()
def answers_file(tmp_path):
    path = tmp_path / "flu.answers"
    path.write_text(FLU_ANSWERS_FILE, encoding="utf-8")
    return path


def test_consult_batch_report(capsys, flu_kb_file, answers_file):
    code, out, err = run_cli(
        capsys, "consult", str(flu_kb_file), "--goal", "diagnosis", "--answers", str(answers_file)
    )
    assert code == 0
    assert out.splitlines() == ["flu 0.56", "common_cold 0.40"]


def test_consult_strict_missing_answer(capsys, flu_kb_file, tmp_path):
    partial = tmp_path / "partial.answers"
    partial.write_text("fever = yes : 0.9\n", encoding="utf-8")
    code, out, err = run_cli(
        capsys, "consult", str(flu_kb_file), "--goal", "diagnosis", "--answers", str(partial)
    )
    assert code == 1
    assert "cough = yes" in err


def test_consult_high_threshold_empty_report(capsys, flu_kb_file, answers_file):
    code, out, err = run_cli(
        capsys, "consult", str(flu_kb_file), "--goal", "diagnosis",
        "--answers", str(answers_file), "--threshold", "0.6",
    )
    assert code == 0
    assert out.strip() == "no conclusion above threshold"


def test_consult_unknown_goal_exit_1(capsys, flu_kb_file, answers_file):
    code, _, err = run_cli(
        capsys, "consult", str(flu_kb_file), "--goal", "nope", "--answers", str(answers_file)
    )
    assert code == 1
    assert "nope" in err


def test_consult_writes_trace_document(capsys, flu_kb_file, answers_file, tmp_path):
    trace_path = tmp_path / "trace.json"
    code, _, _ = run_cli(
        capsys, "consult", str(flu_kb_file), "--goal", "diagnosis",
        "--answers", str(answers_file), "--trace", str(trace_path),
    )
    assert code == 0
    doc = json.loads(trace_path.read_text(encoding="utf-8"))
    assert doc["goal"] == "diagnosis"
    assert doc["candidates"][0]["value"] == "flu"
    assert doc["candidates"][0]["cf"] == 0.56


def test_consult_bad_answers_file(capsys, flu_kb_file, tmp_path):
    bad = tmp_path / "bad.answers"
    bad.write_text("fever yes 0.9\n", encoding="utf-8")
    code, _, err = run_cli(
        capsys, "consult", str(flu_kb_file), "--goal", "diagnosis", "--answers", str(bad)
    )
    assert code == 2
    assert "BAD_ANSWER" in err


def test_consult_interactive(capsys, monkeypatch, flu_kb_file):
    replies = iter(["yes", "0.8", "definitely", "no", "0.4"])
    prompts = []

    def fake_input(prompt):
        prompts.append(prompt)
        return next(replies)

    monkeypatch.setattr("builtins.input", fake_input)
    code, out, err = run_cli(capsys, "consult", str(flu_kb_file), "--goal", "diagnosis")
    assert code == 0
    # "definitely" was rejected and the same question re-asked
    assert "please answer" in out
    assert out.splitlines()[-2:] == ["flu 0.56", "common_cold 0.40"]
    assert all(p.endswith("[yes/no/0..1] > ") for p in prompts)


def test_threshold_env_default(capsys, monkeypatch, flu_kb_file, answers_file):
    monkeypatch.setenv("MKBS_THRESHOLD", "0.6")
    code, out, _ = run_cli(
        capsys, "consult", str(flu_kb_file), "--goal", "diagnosis", "--answers", str(answers_file)
    )
    assert code == 0
    assert out.strip() == "no conclusion above threshold"


# ---- net -----------------------------------------------------------------------


@pytest.fixture()
def diseases_file(tmp_path, diseases_source):
    path = tmp_path / "diseases.mkb"
    path.write_text(diseases_source, encoding="utf-8")
    return path


def test_net_direct(capsys, diseases_file):
    code, out, _ = run_cli(
        capsys, "net", str(diseases_file), "--relation", "treatment", "--node", "lung_cancer"
    )
    assert code == 0
    assert out.splitlines() == ["surgery", "radio_therapy", "chemotherapy", "hormonal_therapy"]


def test_net_inherited(capsys, diseases_file):
    code, out, _ = run_cli(
        capsys, "net", str(diseases_file), "--relation", "treatment",
        "--node", "mesothelioma", "--inherit",
    )
    assert code == 0
    assert out.splitlines() == [
        "surgery (via lung_cancer)",
        "radio_therapy (via lung_cancer)",
        "chemotherapy (via lung_cancer)",
        "hormonal_therapy (via lung_cancer)",
    ]


def test_net_unknown_node(capsys, diseases_file):
    code, out, _ = run_cli(
        capsys, "net", str(diseases_file), "--relation", "treatment", "--node", "zzz"
    )
    assert code == 0
    assert out == ""


# ---- serve ---------------------------------------------------------------------


def free_port() -> int:
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        return sock.getsockname()[1]


def test_serve_empty_dir_exit_2(capsys, tmp_path):
    code, _, err = run_cli(capsys, "serve", "--kb-dir", str(tmp_path), "--port", "0")
    assert code == 2
    assert "no valid" in err


def http(method, url, body=None):
    data = None if body is None else json.dumps(body).encode("utf-8")
    request = urllib.request.Request(url, data=data, method=method)
    request.add_header("Content-Type", "application/json")
    with urllib.request.urlopen(request) as response:
        return json.loads(response.read().decode("utf-8"))


def test_serve_subprocess_replays_flu(tmp_path, flu_source):
    kb_dir = tmp_path / "kbs"
    kb_dir.mkdir()
    (kb_dir / "flu_demo.mkb").write_text(flu_source, encoding="utf-8")
    (kb_dir / "broken.mkb").write_text("rule r1: nope", encoding="utf-8")
    port = free_port()
    process = subprocess.Popen(
        [sys.executable, "-m", "mkbs.cli", "serve", "--kb-dir", str(kb_dir), "--port", str(port)],
        stdout=subprocess.PIPE,
        stderr=subprocess.PIPE,
    )
    base = f"http://127.0.0.1:{port}"
    try:
        for _ in range(100):
            try:
                kbs = http("GET", f"{base}/kbs")
                break
            except OSError:
                time.sleep(0.1)
        else:
            raise AssertionError("server never came up")
        # the broken KB was skipped, the good one serves
        assert [k["kb_id"] for k in kbs["kbs"]] == ["flu_demo"]

        answers = {"fever": 0.9, "cough": 0.8, "night_sweats": 0.0, "sore_throat": 0.4}
        view = http("POST", f"{base}/kbs/flu_demo/sessions", {"goal": "diagnosis"})
        while view["state"] == "awaiting_answer":
            q = view["question"]
            view = http("POST", f"{base}/sessions/{view['session_id']}/answers",
                        {"question_id": q["question_id"], "cf": answers[q["attribute"]]})
        ranked = [(c["value"], c["cf"]) for c in view["result"]["ranked"]]
        assert ranked == [("flu", 0.56), ("common_cold", 0.4)]
    finally:
        process.terminate()
        process.wait(timeout=10)
    stderr = process.stderr.read().decode("utf-8", "replace")
    assert "skipping" in stderr  # logged warning for the broken KB
