import assert from "node:assert/strict";
import { test } from "node:test";

import type { TraceDoc, TraceNode } from "../src/api.js";
import { badgeText, buildTree, initTrace, renderNode, renderTrace, toggleAt } from "../src/tree.js";
import { findAll, findByClass, textOf } from "../src/vdom.js";
import { FLU_TRACE_DOC } from "./helpers.js";

const doc = FLU_TRACE_DOC as unknown as TraceDoc;

test("rule nodes show the engine's arithmetic verbatim", () => {
  const ruleNode = doc.candidates[0].trace.children[0];
  assert.equal(badgeText(ruleNode), "0.7 × 0.8 = 0.56");
  const rendered = renderNode(buildTree(doc.candidates[0].trace), [], () => {});
  assert.ok(textOf(rendered).includes("0.7 × 0.8 = 0.56"));
});

test("cf values come straight from the document (no recomputation)", () => {
  const rendered = renderNode(buildTree(doc.candidates[0].trace), [], () => {});
  const text = textOf(rendered);
  assert.ok(text.includes("cf 0.56"));
  assert.ok(text.includes("cf 0.9"));
  assert.ok(text.includes("cf 0.8"));
});

test("pruned branches are marked and list unevaluated conjuncts", () => {
  const rendered = renderNode(buildTree(doc.candidates[1].trace), [], () => {});
  const pruned = findByClass(rendered, "pruned");
  assert.ok(pruned.length >= 1);
  assert.ok(textOf(rendered).includes("not evaluated: weight_loss = yes"));
});

test("nodes deeper than 3 start hidden behind a collapsed parent", () => {
  const deep: TraceNode = {
    kind: "goal", label: "diagnosis = x", cf: 1, children: [{
      kind: "rule", label: "rule top", cf: 1, id: "top", rule_cf: 1, premise_cf: 1, children: [{
        kind: "all", label: "and", cf: 1, children: [{
          kind: "goal", label: "sub = yes", cf: 1, children: [{
            kind: "rule", label: "rule deep", cf: 1, id: "deep", rule_cf: 1, premise_cf: 1, children: [],
          }],
        }],
      }],
    }],
  };
  const vm = buildTree(deep);
  // depths 0..2 start expanded, depth 3 starts collapsed
  assert.equal(vm.expanded, true);
  assert.equal(vm.children[0].children[0].expanded, true);
  assert.equal(vm.children[0].children[0].children[0].expanded, false);
  const rendered = renderNode(vm, [], () => {});
  assert.ok(textOf(rendered).includes("sub = yes"), "depth-3 node itself is visible");
  assert.ok(!textOf(rendered).includes("rule deep"), "depth-4 child hidden until expanded");
  // toggling the depth-3 node reveals its subtree
  const toggled = toggleAt(vm, [0, 0, 0]);
  const reRendered = renderNode(toggled, [], () => {});
  assert.ok(textOf(reRendered).includes("rule deep"));
});

test("single-ask trace renders one root and one leaf", () => {
  const tiny: TraceNode = { kind: "ask", label: "fever = yes", cf: 0.9, prompt: "?", children: [] };
  const rendered = renderNode(buildTree(tiny), [], () => {});
  assert.equal(findByClass(rendered, "tree-node").length, 1);
  assert.ok(textOf(rendered).includes("fever = yes"));
});

test("candidate tabs select the tree to show", () => {
  let state = initTrace(doc);
  let selected: number | null = null;
  const view = renderTrace(state, {
    onSelect: (i) => (selected = i),
    onToggle: () => {},
  });
  const tabs = findByClass(view, "candidate-tab");
  assert.equal(tabs.length, 2);
  assert.ok(textOf(tabs[0]).includes("flu (cf 0.56)"));
  assert.ok(textOf(tabs[1]).includes("tb (cf 0)"));
  tabs[1].on["click"](new Event("click"));
  assert.equal(selected, 1);
  state = { ...state, selected: 1 };
  const tbView = renderTrace(state, { onSelect: () => {}, onToggle: () => {} });
  assert.ok(findByClass(tbView, "pruned").length >= 1);
});

test("toggleAt flips exactly the addressed node", () => {
  const vm = buildTree(doc.candidates[0].trace);
  const toggled = toggleAt(vm, [0]);
  assert.equal(toggled.children[0].expanded, !vm.children[0].expanded);
  assert.equal(toggled.expanded, vm.expanded);
  assert.equal(toggled.children[0].children[0].expanded, vm.children[0].children[0].expanded);
});

test("malformed documents do not render a partial tree", () => {
  const view = renderTrace(initTrace({ goal: "diagnosis", candidates: [] }), {
    onSelect: () => {},
    onToggle: () => {},
  });
  assert.ok(textOf(view).includes("no candidates"));
  assert.equal(findAll(view, (n) => n.attrs["class"]?.includes("tree-node") ?? false).length, 0);
});
