/**
 * The consultation wizard: one question at a time, Yes / No / confidence
 * slider, then the ranked result with a decision-tree view per candidate.
 *
 * State only ever changes on a server response (no optimistic updates), at
 * most one request is in flight per session, and the answer history is
 * append-only. Everything shown is reproducible from GET endpoints alone.
 */

import { ApiError, cfText, Client, Question, SessionView, TraceDoc } from "./api.js";
import { initTrace, renderTrace, toggleAt, TraceState } from "./tree.js";
import { h, VNode } from "./vdom.js";

export interface AnswerRecord {
  question: Question;
  cf: number;
}

export interface ConsultState {
  kbId: string;
  goal: string;
  view: SessionView | null;
  history: AnswerRecord[];
  slider: number;
  busy: boolean;
  banner: string | null;
  trace: TraceState | null;
}

export function initConsult(kbId: string, goal: string): ConsultState {
  return {
    kbId,
    goal,
    view: null,
    history: [],
    slider: 0.5,
    busy: false,
    banner: null,
    trace: null,
  };
}

export class ConsultController {
  constructor(
    private client: Client,
    public state: ConsultState,
    private notify: () => void,
  ) {}

  private update(patch: Partial<ConsultState>): void {
    this.state = { ...this.state, ...patch };
    this.notify();
  }

  async start(): Promise<void> {
    if (this.state.busy) return;
    this.update({ busy: true, banner: null });
    try {
      const view = await this.client.createSession(this.state.kbId, this.state.goal);
      this.update({ view, busy: false, history: [], trace: null });
    } catch (err) {
      this.update({ busy: false, banner: describeError(err) });
    }
  }

  /** Resume an existing session from the server (page reload, retry). */
  async resume(sessionId: string): Promise<void> {
    this.update({ busy: true });
    try {
      const view = await this.client.getSession(sessionId);
      this.update({ view, busy: false, banner: null });
    } catch (err) {
      this.update({ busy: false, banner: describeError(err) });
    }
  }

  async answer(cf: number): Promise<void> {
    const view = this.state.view;
    if (this.state.busy || !view || view.state !== "awaiting_answer" || !view.question) return;
    const question = view.question;
    this.update({ busy: true, banner: null });
    try {
      const next = await this.client.submitAnswer(view.session_id, question.question_id, cf);
      this.update({
        view: next,
        busy: false,
        history: [...this.state.history, { question, cf }],
      });
    } catch (err) {
      if (err instanceof ApiError && err.code === "STALE_QUESTION") {
        // someone else advanced the session; re-sync instead of guessing
        this.update({ busy: false, banner: "question was stale; refreshed the session" });
        await this.resume(view.session_id);
        return;
      }
      this.update({ busy: false, banner: describeError(err) });
    }
  }

  async loadTrace(): Promise<void> {
    const view = this.state.view;
    if (!view || view.state !== "done") return;
    this.update({ busy: true });
    try {
      const doc: TraceDoc = await this.client.getTrace(view.session_id);
      this.update({ busy: false, trace: initTrace(doc) });
    } catch (err) {
      this.update({ busy: false, banner: describeError(err) });
    }
  }

  selectCandidate(index: number): void {
    if (!this.state.trace) return;
    this.update({ trace: { ...this.state.trace, selected: index } });
  }

  toggleNode(candidate: number, path: number[]): void {
    const trace = this.state.trace;
    if (!trace) return;
    const trees = trace.trees.map((tree, i) =>
      i === candidate ? toggleAt(tree, path) : tree,
    );
    this.update({ trace: { ...trace, trees } });
  }

  setSlider(value: number): void {
    this.update({ slider: value });
  }

  dismissBanner(): void {
    this.update({ banner: null });
  }
}

export function describeError(err: unknown): string {
  if (err instanceof ApiError) {
    return `${err.code}: ${err.message}`;
  }
  return String(err);
}

export function renderConsult(controller: ConsultController): VNode {
  const state = controller.state;
  const parts: VNode[] = [];
  if (state.banner) {
    parts.push(
      h("div", { class: "banner", role: "alert" }, [
        h("span", {}, state.banner),
        h("button", { class: "dismiss" }, "dismiss", { click: () => controller.dismissBanner() }),
        ...(state.view
          ? [h("button", { class: "retry" }, "retry", {
              click: () => void controller.resume(state.view!.session_id),
            })]
          : []),
      ]),
    );
  }
  const view = state.view;
  if (!view) {
    parts.push(
      h("button", { class: "start" }, `start consultation for ${state.goal}`, {
        click: () => void controller.start(),
      }),
    );
  } else if (view.state === "awaiting_answer" && view.question) {
    parts.push(renderQuestion(controller, view.question));
  } else if (view.state === "done" && view.result) {
    parts.push(renderResult(controller));
  } else if (view.state === "aborted") {
    parts.push(h("p", { class: "aborted" }, `consultation aborted: ${view.error?.message ?? ""}`));
  }
  if (state.history.length > 0) {
    parts.push(
      h("details", { class: "history", open: "open" }, [
        h("summary", {}, `answers so far (${state.history.length})`),
        h(
          "ul",
          {},
          state.history.map((record) =>
            h("li", {}, `${record.question.attribute} = ${String(record.question.value)} → ${cfText(record.cf)}`),
          ),
        ),
      ]),
    );
  }
  return h("section", { class: "consult-panel" }, parts);
}

function renderQuestion(controller: ConsultController, question: Question): VNode {
  const slider = controller.state.slider;
  const menu =
    question.menu && question.menu.length > 0
      ? [h("p", { class: "menu" }, `one of: ${question.menu.map(String).join(", ")}`)]
      : [];
  return h("div", { class: "question" }, [
    h("p", { class: "prompt" }, question.prompt),
    h("p", { class: "subject" }, `${question.attribute} = ${String(question.value)}`),
    ...menu,
    h("div", { class: "answer-controls" }, [
      h("button", { class: "yes" }, "Yes", { click: () => void controller.answer(1.0) }),
      h("button", { class: "no" }, "No", { click: () => void controller.answer(0.0) }),
      h("input", {
        class: "confidence",
        type: "range",
        min: "0",
        max: "1",
        step: "0.05",
        value: String(slider),
      }, [], {
        input: (event) => {
          const target = event.target as HTMLInputElement | null;
          if (target) controller.setSlider(Number(target.value));
        },
      }),
      h("button", { class: "submit-confidence" }, `Yes, confidence ${slider}`, {
        click: () => void controller.answer(controller.state.slider),
      }),
    ]),
  ]);
}

function renderResult(controller: ConsultController): VNode {
  const view = controller.state.view!;
  const result = view.result!;
  const rows =
    result.ranked.length === 0
      ? [h("p", { class: "empty" }, "no conclusion above threshold")]
      : result.ranked.map((entry) =>
          h("li", { class: "ranked-entry" }, [
            h("span", { class: "value" }, String(entry.value)),
            h("span", { class: "cf" }, ` ${cfText(entry.cf)}`),
          ]),
        );
  const parts: VNode[] = [
    h("h3", {}, `ranked conclusions for ${result.goal}`),
    result.ranked.length === 0 ? rows[0] : h("ol", { class: "ranked" }, rows),
    h("button", { class: "view-tree" }, "view decision tree", {
      click: () => void controller.loadTrace(),
    }),
  ];
  if (controller.state.trace) {
    parts.push(
      renderTrace(controller.state.trace, {
        onSelect: (index) => controller.selectCandidate(index),
        onToggle: (candidate, path) => controller.toggleNode(candidate, path),
      }),
    );
  }
  return h("div", { class: "result" }, parts);
}
