/**
 * Rule editor: the rule list in conflict-resolution order with add, edit, and
 * delete, all in `.mkb` source form. Validation failures from the service
 * render verbatim next to the form; a revision that moved under us (another
 * editor) prompts a reload instead of clobbering.
 */

import { ApiError, Client, Diagnostic, RuleEntry } from "./api.js";
import { h, VNode } from "./vdom.js";

export interface EditorState {
  kbId: string;
  revision: number | null;
  rules: RuleEntry[];
  draft: string;
  editing: string | null; // rule id whose source is in the draft box
  diagnostics: Diagnostic[];
  warnings: Diagnostic[];
  banner: string | null;
  conflict: boolean;
  busy: boolean;
}

export function initEditor(kbId: string): EditorState {
  return {
    kbId,
    revision: null,
    rules: [],
    draft: "",
    editing: null,
    diagnostics: [],
    warnings: [],
    banner: null,
    conflict: false,
    busy: false,
  };
}

export class EditorController {
  constructor(
    private client: Client,
    public state: EditorState,
    private notify: () => void,
  ) {}

  private update(patch: Partial<EditorState>): void {
    this.state = { ...this.state, ...patch };
    this.notify();
  }

  async refresh(): Promise<void> {
    this.update({ busy: true });
    try {
      const listing = await this.client.listRules(this.state.kbId);
      this.update({
        busy: false,
        revision: listing.revision,
        rules: listing.rules,
        conflict: false,
        banner: null,
      });
    } catch (err) {
      this.update({ busy: false, banner: String(err) });
    }
  }

  setDraft(draft: string): void {
    this.update({ draft });
  }

  startEdit(rule: RuleEntry): void {
    this.update({ editing: rule.id, draft: rule.source, diagnostics: [] });
  }

  startAdd(): void {
    this.update({ editing: null, draft: "", diagnostics: [] });
  }

  async submit(): Promise<void> {
    if (this.state.busy) return;
    this.update({ busy: true, diagnostics: [], banner: null });
    try {
      const response = this.state.editing
        ? await this.client.updateRule(this.state.kbId, this.state.editing, this.state.draft)
        : await this.client.addRule(this.state.kbId, this.state.draft);
      this.update({ busy: false, warnings: response.warnings, draft: "", editing: null });
      await this.refresh();
    } catch (err) {
      this.fail(err);
    }
  }

  async remove(ruleId: string): Promise<void> {
    if (this.state.busy) return;
    this.update({ busy: true, banner: null });
    try {
      const response = await this.client.deleteRule(this.state.kbId, ruleId);
      this.update({ busy: false, warnings: response.warnings });
      await this.refresh();
    } catch (err) {
      this.fail(err);
    }
  }

  private fail(err: unknown): void {
    if (err instanceof ApiError) {
      if (err.diagnostics.length > 0) {
        this.update({ busy: false, diagnostics: err.diagnostics });
        return;
      }
      if (err.code === "DUPLICATE_ID" || err.code === "NOT_FOUND") {
        // the list we rendered is stale relative to the store
        this.update({ busy: false, conflict: true, banner: `${err.code}: ${err.message}` });
        return;
      }
      this.update({ busy: false, banner: `${err.code}: ${err.message}` });
      return;
    }
    this.update({ busy: false, banner: String(err) });
  }
}

export function renderEditor(controller: EditorController): VNode {
  const state = controller.state;
  const parts: VNode[] = [
    h("div", { class: "editor-head" }, [
      h("h3", {}, `rules of ${state.kbId}`),
      h("span", { class: "revision-badge" }, `revision ${state.revision ?? "?"}`),
      h("button", { class: "reload" }, "reload", { click: () => void controller.refresh() }),
    ]),
  ];
  if (state.banner) {
    parts.push(h("div", { class: "banner" }, state.banner));
  }
  if (state.conflict) {
    parts.push(
      h("div", { class: "conflict" }, [
        h("span", {}, "the knowledge base changed under you; "),
        h("button", { class: "reload-conflict" }, "reload the list", {
          click: () => void controller.refresh(),
        }),
      ]),
    );
  }
  parts.push(
    h(
      "ol",
      { class: "rule-list" },
      state.rules.map((rule) =>
        h("li", { class: "rule-entry" }, [
          h("code", { class: "source" }, rule.source),
          h("button", { class: "edit" }, "edit", { click: () => controller.startEdit(rule) }),
          h("button", { class: "delete" }, "delete", {
            click: () => void controller.remove(rule.id),
          }),
        ]),
      ),
    ),
  );
  const diagnostics = state.diagnostics.map((diag) =>
    h("li", { class: `diagnostic ${diag.severity}` }, diag.rendered),
  );
  parts.push(
    h("div", { class: "rule-form" }, [
      h("h4", {}, state.editing ? `editing ${state.editing}` : "add a rule"),
      h("textarea", { class: "draft", rows: "3", placeholder: "rule id: if … then … cf 0.5 ." }, state.draft, {
        input: (event) => controller.setDraft((event.target as HTMLTextAreaElement).value),
      }),
      ...(diagnostics.length > 0 ? [h("ul", { class: "diagnostics" }, diagnostics)] : []),
      h("div", { class: "form-actions" }, [
        h("button", { class: "submit" }, state.editing ? "save rule" : "add rule", {
          click: () => void controller.submit(),
        }),
        ...(state.editing
          ? [h("button", { class: "cancel" }, "cancel", { click: () => controller.startAdd() })]
          : []),
      ]),
    ]),
  );
  if (state.warnings.length > 0) {
    parts.push(
      h(
        "ul",
        { class: "warnings" },
        state.warnings.map((warning) => h("li", { class: "diagnostic warning" }, warning.rendered)),
      ),
    );
  }
  return h("section", { class: "editor-panel" }, parts);
}
