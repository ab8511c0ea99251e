/**
 * Application shell: knowledge-base/goal pickers and the three panels
 * (consultation, semantic net, rule editor). The active session id lives in
 * the URL hash, so a reload resumes the session straight from the server.
 */
import { Client } from "./api.js";
import { ConsultController, initConsult, renderConsult } from "./consult.js";
import { EditorController, initEditor, renderEditor } from "./editor.js";
import { initNet, NetController, renderNet } from "./net.js";
import { h, mount } from "./vdom.js";
export class App {
    client;
    root;
    window_;
    state = { kbs: [], kbId: null, goal: null, tab: "consult", banner: null };
    consult = null;
    net = null;
    editor = null;
    constructor(client, root, window_) {
        this.client = client;
        this.root = root;
        this.window_ = window_;
    }
    rerender = () => {
        const view = this.render();
        const session = this.consult?.state.view?.session_id;
        this.window_.location.hash = session ? `session=${session}` : "";
        mount(this.root, view);
    };
    async boot() {
        try {
            const kbs = await this.client.listKbs();
            this.state.kbs = kbs;
            if (kbs.length > 0) {
                this.selectKb(kbs[0].kb_id);
            }
        }
        catch (err) {
            this.state.banner = `cannot load knowledge bases: ${String(err)}`;
        }
        const match = /session=([0-9a-f]+)/.exec(this.window_.location.hash);
        if (match && this.consult) {
            await this.consult.resume(match[1]);
        }
        this.rerender();
    }
    selectKb(kbId) {
        const info = this.state.kbs.find((kb) => kb.kb_id === kbId);
        this.state.kbId = kbId;
        this.state.goal = info && info.goals.length > 0 ? info.goals[0] : null;
        this.wireControllers();
        this.rerender();
        void this.editor?.refresh();
    }
    selectGoal(goal) {
        this.state.goal = goal;
        this.wireControllers();
        this.rerender();
    }
    wireControllers() {
        const { kbId, goal } = this.state;
        if (!kbId)
            return;
        this.consult = new ConsultController(this.client, initConsult(kbId, goal ?? ""), this.rerender);
        this.net = new NetController(this.client, initNet(kbId), this.rerender);
        this.editor = new EditorController(this.client, initEditor(kbId), this.rerender);
    }
    selectTab(tab) {
        this.state.tab = tab;
        this.rerender();
        if (tab === "rules")
            void this.editor?.refresh();
    }
    render() {
        const state = this.state;
        const header = h("header", { class: "app-header" }, [
            h("h1", {}, "expert shell"),
            h("select", { class: "kb-select" }, state.kbs.map((kb) => h("option", { value: kb.kb_id, ...(kb.kb_id === state.kbId ? { selected: "selected" } : {}) }, kb.kb_id)), { change: (event) => this.selectKb(event.target.value) }),
            h("input", { class: "goal-input", value: state.goal ?? "", placeholder: "goal attribute" }, [], {
                change: (event) => this.selectGoal(event.target.value),
            }),
            h("nav", { class: "tabs" }, ["consult", "net", "rules"].map((tab) => h("button", { class: `tab${tab === state.tab ? " active" : ""}` }, tab, {
                click: () => this.selectTab(tab),
            }))),
        ]);
        const body = [];
        if (state.banner)
            body.push(h("div", { class: "banner" }, state.banner));
        if (state.tab === "consult" && this.consult)
            body.push(renderConsult(this.consult));
        if (state.tab === "net" && this.net)
            body.push(renderNet(this.net));
        if (state.tab === "rules" && this.editor)
            body.push(renderEditor(this.editor));
        return h("main", { class: "app" }, [header, ...body]);
    }
}
export function start() {
    const root = document.getElementById("app");
    if (!root)
        throw new Error("missing #app element");
    const app = new App(new Client(""), root, window);
    void app.boot();
}
