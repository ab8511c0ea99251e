/**
 * Minimal virtual-DOM layer.
 *
 * Views build plain VNode trees; `mount` turns them into real DOM. Keeping
 * views as data means every panel can be unit-tested in node without a
 * browser: tests assert on the tree via `textOf` and `findAll`.
 */

export type Handler = (event: Event) => void;

export interface VNode {
  tag: string;
  attrs: Record<string, string>;
  on: Record<string, Handler>;
  children: Child[];
}

export type Child = VNode | string;

export function h(
  tag: string,
  attrs: Record<string, string> = {},
  children: Child[] | Child = [],
  on: Record<string, Handler> = {},
): VNode {
  return { tag, attrs, on, children: Array.isArray(children) ? children : [children] };
}

/** Concatenated text content of a subtree (test helper, mirrors textContent). */
export function textOf(node: Child): string {
  if (typeof node === "string") return node;
  return node.children.map(textOf).join("");
}

/** Depth-first search over a VNode tree. */
export function findAll(node: Child, match: (node: VNode) => boolean): VNode[] {
  if (typeof node === "string") return [];
  const here = match(node) ? [node] : [];
  return here.concat(node.children.flatMap((child) => findAll(child, match)));
}

export function findByClass(node: Child, className: string): VNode[] {
  return findAll(node, (n) => (n.attrs["class"] ?? "").split(" ").includes(className));
}

/** Render a VNode into a real DOM element (browser only). */
export function toDom(node: Child, doc: Document): Node {
  if (typeof node === "string") return doc.createTextNode(node);
  const el = doc.createElement(node.tag);
  for (const [key, value] of Object.entries(node.attrs)) el.setAttribute(key, value);
  for (const [event, handler] of Object.entries(node.on)) el.addEventListener(event, handler);
  for (const child of node.children) el.appendChild(toDom(child, doc));
  return el;
}

export function mount(root: Element, node: VNode): void {
  root.replaceChildren(toDom(node, root.ownerDocument));
}
