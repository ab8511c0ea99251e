/**
 * Decision-tree view of a trace document.
 *
 * The trace arrives fully computed; this module only shapes it for display.
 * Nodes below depth 3 start collapsed, every node shows its certainty factor
 * verbatim, rule nodes show the rule_cf × premise_cf = cf arithmetic the
 * engine already performed, and pruned conjunctions list the conjuncts that
 * were never evaluated.
 */
import { cfText } from "./api.js";
import { findByClass, h } from "./vdom.js";
const COLLAPSE_BELOW = 3;
export function buildTree(node, depth = 0) {
    return {
        node,
        depth,
        expanded: depth < COLLAPSE_BELOW,
        children: node.children.map((child) => buildTree(child, depth + 1)),
    };
}
/** Flip the expanded flag of the node at `path` (child indexes from the root). */
export function toggleAt(vm, path) {
    if (path.length === 0) {
        return { ...vm, expanded: !vm.expanded };
    }
    const [head, ...rest] = path;
    const children = vm.children.map((child, i) => (i === head ? toggleAt(child, rest) : child));
    return { ...vm, children };
}
export function badgeText(node) {
    if (node.kind === "rule") {
        return `${cfText(node.rule_cf ?? 0)} × ${cfText(node.premise_cf ?? 0)} = ${cfText(node.cf)}`;
    }
    return `cf ${cfText(node.cf)}`;
}
export function labelText(node) {
    return node.id ? `${node.label}` : node.label;
}
function cfStyle(cf) {
    // 0 → neutral, 1 → saturated; pure styling, the number itself is untouched
    return `background: hsla(145, 65%, 42%, ${cf});`;
}
export function renderNode(vm, path, onToggle) {
    const node = vm.node;
    const hasChildren = vm.children.length > 0 || (node.unevaluated?.length ?? 0) > 0;
    const headParts = [
        h("span", { class: `badge kind-${node.kind}` }, node.kind),
        h("span", { class: "label" }, labelText(node)),
        h("span", { class: `cf kind-${node.kind}`, style: cfStyle(node.cf) }, badgeText(node)),
    ];
    if (node.kind === "ask" && node.prompt) {
        headParts.push(h("span", { class: "prompt" }, node.prompt));
    }
    const children = [];
    if (vm.expanded) {
        if (node.kind === "pruned" && node.unevaluated && node.unevaluated.length > 0) {
            children.push(h("li", { class: "unevaluated" }, `not evaluated: ${node.unevaluated.join(", ")}`));
        }
        children.push(...vm.children.map((child, i) => h("li", {}, renderNode(child, path.concat(i), onToggle))));
    }
    return h("div", { class: `tree-node kind-${node.kind}${node.kind === "pruned" ? " pruned" : ""}` }, [
        h("div", { class: "tree-head", role: "button" }, [
            h("span", { class: "twist" }, hasChildren ? (vm.expanded ? "▾" : "▸") : "·"),
            ...headParts,
        ], { click: () => onToggle(path) }),
        ...(children.length > 0 ? [h("ul", { class: "tree-children" }, children)] : []),
    ]);
}
export function initTrace(doc) {
    return {
        doc,
        selected: 0,
        trees: doc.candidates.map((candidate) => buildTree(candidate.trace)),
    };
}
export function renderTrace(state, handlers) {
    const tabs = state.doc.candidates.map((candidate, i) => h("button", { class: `candidate-tab${i === state.selected ? " active" : ""}` }, `${String(candidate.value)} (cf ${cfText(candidate.cf)})`, { click: () => handlers.onSelect(i) }));
    const current = state.trees[state.selected];
    return h("section", { class: "trace-panel" }, [
        h("div", { class: "candidate-tabs" }, tabs),
        current
            ? renderNode(current, [], (path) => handlers.onToggle(state.selected, path))
            : h("p", {}, "no candidates were evaluated"),
    ]);
}
/** All pruned nodes in a rendered tree (used by tests and styling checks). */
export function prunedNodes(root) {
    return findByClass(root, "pruned");
}
