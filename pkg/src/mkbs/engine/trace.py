"""Decision-tree traces of proofs, and their JSON document form.

Every prove/consult call leaves behind a TraceNode tree recording exactly the
work performed: which rules fired with which certainties, how conjunctions and
disjunctions combined, what was asked, what came from cache, and where a branch
was abandoned. The JSON rendering is byte-stable: identical traces produce
identical documents.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

# Node kinds
GOAL = "goal"
RULE = "rule"
ALL = "all"
ANY = "any"
TEST = "test"
ASK = "ask"
PRUNED = "pruned"


@dataclass(frozen=True, slots=True)
class TraceNode:
    kind: str
    label: str
    cf: float
    children: tuple[TraceNode, ...] = ()
    rule_id: str | None = None
    rule_cf: float | None = None
    premise_cf: float | None = None
    prompt: str | None = None
    unevaluated: tuple[str, ...] = field(default=())


def round_cf(cf: float) -> float:
    """Certainty factor rounded for documents: up to 12 significant digits."""
    return float(format(cf, ".12g"))


def trace_to_jsonable(node: TraceNode) -> dict:
    """Node as a plain dict with stable field order (see trace_to_document)."""
    doc: dict = {"kind": node.kind, "label": node.label, "cf": round_cf(node.cf)}
    if node.kind == RULE:
        doc["id"] = node.rule_id
        doc["rule_cf"] = round_cf(node.rule_cf if node.rule_cf is not None else 0.0)
        doc["premise_cf"] = round_cf(node.premise_cf if node.premise_cf is not None else 0.0)
    if node.prompt is not None:
        doc["prompt"] = node.prompt
    if node.kind == PRUNED:
        doc["unevaluated"] = list(node.unevaluated)
    doc["children"] = [trace_to_jsonable(child) for child in node.children]
    return doc


def trace_to_document(trace: TraceNode) -> str:
    """UTF-8 JSON document for a trace.

    Field order per node: kind, label, cf, id?, rule_cf?, premise_cf?, prompt?,
    unevaluated?, children. Certainty factors carry up to 12 significant
    digits. Identical traces yield byte-identical documents.
    """
    return json.dumps(trace_to_jsonable(trace), ensure_ascii=False, separators=(",", ":"))
