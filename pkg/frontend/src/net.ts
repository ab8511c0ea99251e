/**
 * Semantic-net browser: query a relation for a node, optionally with
 * inheritance, and describe a node across all relations. The isa ancestors in
 * a describe answer double as a breadcrumb trail.
 */

import { Client, NetAnswer } from "./api.js";
import { h, VNode } from "./vdom.js";

export interface NetState {
  kbId: string;
  node: string;
  relation: string;
  inherit: boolean;
  answer: NetAnswer | null;
  description: Record<string, NetAnswer> | null;
  banner: string | null;
  busy: boolean;
}

export function initNet(kbId: string): NetState {
  return {
    kbId,
    node: "",
    relation: "treatment",
    inherit: true,
    answer: null,
    description: null,
    banner: null,
    busy: false,
  };
}

export class NetController {
  constructor(
    private client: Client,
    public state: NetState,
    private notify: () => void,
  ) {}

  private update(patch: Partial<NetState>): void {
    this.state = { ...this.state, ...patch };
    this.notify();
  }

  setNode(node: string): void {
    this.update({ node });
  }

  setRelation(relation: string): void {
    this.update({ relation });
  }

  setInherit(inherit: boolean): void {
    this.update({ inherit });
  }

  async query(): Promise<void> {
    if (this.state.busy) return;
    this.update({ busy: true, banner: null });
    try {
      const answer = await this.client.netQuery(
        this.state.kbId,
        this.state.relation,
        this.state.node,
        this.state.inherit,
      );
      this.update({ answer, description: null, busy: false });
    } catch (err) {
      this.update({ busy: false, banner: String(err) });
    }
  }

  async describe(): Promise<void> {
    if (this.state.busy) return;
    this.update({ busy: true, banner: null });
    try {
      const body = await this.client.netDescribe(this.state.kbId, this.state.node);
      this.update({ description: body.relations, answer: null, busy: false });
    } catch (err) {
      this.update({ busy: false, banner: String(err) });
    }
  }

  /** Jump to a related node (breadcrumb / result click). */
  async visit(node: string): Promise<void> {
    this.update({ node });
    await this.describe();
  }
}

export function breadcrumb(description: Record<string, NetAnswer> | null): string[] {
  if (!description || !description["isa"]) return [];
  return description["isa"].results.map((r) => r.object);
}

function renderAnswer(answer: NetAnswer, onVisit: (node: string) => void): VNode {
  if (answer.results.length === 0) {
    return h("p", { class: "empty" }, "no results");
  }
  return h(
    "ul",
    { class: "net-results" },
    answer.results.map((result) =>
      h("li", { class: result.via ? "inherited" : "direct" }, [
        h("a", { class: "object", href: "#" }, result.object, {
          click: (event) => {
            event.preventDefault();
            onVisit(result.object);
          },
        }),
        ...(result.via ? [h("span", { class: "via" }, ` (via ${result.via})`)] : []),
      ]),
    ),
  );
}

export function renderNet(controller: NetController): VNode {
  const state = controller.state;
  const visit = (node: string) => void controller.visit(node);
  const parts: VNode[] = [
    h("div", { class: "net-form" }, [
      h("input", { class: "node", placeholder: "node, e.g. mesothelioma", value: state.node }, [], {
        input: (event) => controller.setNode((event.target as HTMLInputElement).value),
      }),
      h("input", { class: "relation", placeholder: "relation", value: state.relation }, [], {
        input: (event) => controller.setRelation((event.target as HTMLInputElement).value),
      }),
      h("label", {}, [
        h("input", {
          class: "inherit",
          type: "checkbox",
          ...(state.inherit ? { checked: "checked" } : {}),
        }, [], {
          change: (event) => controller.setInherit((event.target as HTMLInputElement).checked),
        }),
        "inherit along isa",
      ]),
      h("button", { class: "run-query" }, "query", { click: () => void controller.query() }),
      h("button", { class: "run-describe" }, "describe", { click: () => void controller.describe() }),
    ]),
  ];
  if (state.banner) {
    parts.push(h("div", { class: "banner" }, state.banner));
  }
  const crumbs = breadcrumb(state.description);
  if (crumbs.length > 0) {
    const links = crumbs.flatMap((node, i) => {
      const link = h("a", { class: "crumb", href: "#" }, node, {
        click: (event) => {
          event.preventDefault();
          visit(node);
        },
      });
      return i === 0 ? [link] : [h("span", {}, " › "), link];
    });
    parts.push(h("nav", { class: "breadcrumb" }, [h("span", {}, `${state.node} › `), ...links]));
  }
  if (state.answer) {
    parts.push(h("h3", {}, `${state.answer.relation} of ${state.answer.node}`));
    parts.push(renderAnswer(state.answer, visit));
  }
  if (state.description) {
    const relations = Object.keys(state.description);
    if (relations.length === 0) {
      parts.push(h("p", { class: "empty" }, "nothing known about this node"));
    }
    for (const relation of relations) {
      parts.push(h("h3", {}, relation));
      parts.push(renderAnswer(state.description[relation], visit));
    }
  }
  return h("section", { class: "net-panel" }, parts);
}
