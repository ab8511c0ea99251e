/**
 * Application shell: knowledge-base/goal pickers and the three panels
 * (consultation, semantic net, rule editor). The active session id lives in
 * the URL hash, so a reload resumes the session straight from the server.
 */

import { Client, KbInfo } from "./api.js";
import { ConsultController, initConsult, renderConsult } from "./consult.js";
import { EditorController, initEditor, renderEditor } from "./editor.js";
import { initNet, NetController, renderNet } from "./net.js";
import { h, mount, VNode } from "./vdom.js";

type Tab = "consult" | "net" | "rules";

interface AppState {
  kbs: KbInfo[];
  kbId: string | null;
  goal: string | null;
  tab: Tab;
  banner: string | null;
}

export class App {
  state: AppState = { kbs: [], kbId: null, goal: null, tab: "consult", banner: null };
  consult: ConsultController | null = null;
  net: NetController | null = null;
  editor: EditorController | null = null;

  constructor(
    private client: Client,
    private root: Element,
    private window_: Window,
  ) {}

  private rerender = (): void => {
    const view = this.render();
    const session = this.consult?.state.view?.session_id;
    this.window_.location.hash = session ? `session=${session}` : "";
    mount(this.root, view);
  };

  async boot(): Promise<void> {
    try {
      const kbs = await this.client.listKbs();
      this.state.kbs = kbs;
      if (kbs.length > 0) {
        this.selectKb(kbs[0].kb_id);
      }
    } catch (err) {
      this.state.banner = `cannot load knowledge bases: ${String(err)}`;
    }
    const match = /session=([0-9a-f]+)/.exec(this.window_.location.hash);
    if (match && this.consult) {
      await this.consult.resume(match[1]);
    }
    this.rerender();
  }

  selectKb(kbId: string): void {
    const info = this.state.kbs.find((kb) => kb.kb_id === kbId);
    this.state.kbId = kbId;
    this.state.goal = info && info.goals.length > 0 ? info.goals[0] : null;
    this.wireControllers();
    this.rerender();
    void this.editor?.refresh();
  }

  selectGoal(goal: string): void {
    this.state.goal = goal;
    this.wireControllers();
    this.rerender();
  }

  private wireControllers(): void {
    const { kbId, goal } = this.state;
    if (!kbId) return;
    this.consult = new ConsultController(this.client, initConsult(kbId, goal ?? ""), this.rerender);
    this.net = new NetController(this.client, initNet(kbId), this.rerender);
    this.editor = new EditorController(this.client, initEditor(kbId), this.rerender);
  }

  selectTab(tab: Tab): void {
    this.state.tab = tab;
    this.rerender();
    if (tab === "rules") void this.editor?.refresh();
  }

  render(): VNode {
    const state = this.state;
    const header = h("header", { class: "app-header" }, [
      h("h1", {}, "expert shell"),
      h(
        "select",
        { class: "kb-select" },
        state.kbs.map((kb) =>
          h("option", { value: kb.kb_id, ...(kb.kb_id === state.kbId ? { selected: "selected" } : {}) }, kb.kb_id),
        ),
        { change: (event) => this.selectKb((event.target as HTMLSelectElement).value) },
      ),
      h("input", { class: "goal-input", value: state.goal ?? "", placeholder: "goal attribute" }, [], {
        change: (event) => this.selectGoal((event.target as HTMLInputElement).value),
      }),
      h(
        "nav",
        { class: "tabs" },
        (["consult", "net", "rules"] as Tab[]).map((tab) =>
          h("button", { class: `tab${tab === state.tab ? " active" : ""}` }, tab, {
            click: () => this.selectTab(tab),
          }),
        ),
      ),
    ]);
    const body: VNode[] = [];
    if (state.banner) body.push(h("div", { class: "banner" }, state.banner));
    if (state.tab === "consult" && this.consult) body.push(renderConsult(this.consult));
    if (state.tab === "net" && this.net) body.push(renderNet(this.net));
    if (state.tab === "rules" && this.editor) body.push(renderEditor(this.editor));
    return h("main", { class: "app" }, [header, ...body]);
  }
}

export function start(): void {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app element");
  const app = new App(new Client(""), root, window);
  void app.boot();
}
