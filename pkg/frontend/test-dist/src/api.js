/**
 * Client for the consultation service wire protocol.
 *
 * Thin by design: it moves JSON, it never computes. Every certainty factor
 * shown in the UI is the number the server sent, stringified as-is.
 */
export class ApiError extends Error {
    status;
    code;
    diagnostics;
    constructor(status, code, message, diagnostics = []) {
        super(message);
        this.status = status;
        this.code = code;
        this.diagnostics = diagnostics;
    }
}
export class Client {
    base;
    fetcher;
    constructor(base = "", fetcher = (url, init) => fetch(url, init)) {
        this.base = base;
        this.fetcher = fetcher;
    }
    async call(method, path, body) {
        let response;
        try {
            response = await this.fetcher(this.base + path, {
                method,
                headers: body === undefined ? {} : { "Content-Type": "application/json" },
                body: body === undefined ? undefined : JSON.stringify(body),
            });
        }
        catch (err) {
            throw new ApiError(0, "NETWORK", `cannot reach the service: ${String(err)}`);
        }
        const payload = (await response.json());
        if (!response.ok) {
            const error = (payload["error"] ?? {});
            throw new ApiError(response.status, error.code ?? "UNKNOWN", error.message ?? response.statusText, error.diagnostics ?? []);
        }
        return payload;
    }
    async listKbs() {
        const body = await this.call("GET", "/kbs");
        return body.kbs;
    }
    createSession(kbId, goal) {
        return this.call("POST", `/kbs/${encodeURIComponent(kbId)}/sessions`, { goal });
    }
    getSession(sessionId) {
        return this.call("GET", `/sessions/${encodeURIComponent(sessionId)}`);
    }
    submitAnswer(sessionId, questionId, cf) {
        return this.call("POST", `/sessions/${encodeURIComponent(sessionId)}/answers`, {
            question_id: questionId,
            cf,
        });
    }
    getTrace(sessionId) {
        return this.call("GET", `/sessions/${encodeURIComponent(sessionId)}/trace`);
    }
    netQuery(kbId, relation, node, inherit) {
        const params = new URLSearchParams({ relation, node, inherit: String(inherit) });
        return this.call("GET", `/kbs/${encodeURIComponent(kbId)}/net?${params}`);
    }
    netDescribe(kbId, node) {
        const params = new URLSearchParams({ node });
        return this.call("GET", `/kbs/${encodeURIComponent(kbId)}/net/describe?${params}`);
    }
    listRules(kbId) {
        return this.call("GET", `/kbs/${encodeURIComponent(kbId)}/rules`);
    }
    addRule(kbId, source) {
        return this.call("POST", `/kbs/${encodeURIComponent(kbId)}/rules`, { source });
    }
    updateRule(kbId, ruleId, source) {
        return this.call("PUT", `/kbs/${encodeURIComponent(kbId)}/rules/${encodeURIComponent(ruleId)}`, { source });
    }
    deleteRule(kbId, ruleId) {
        return this.call("DELETE", `/kbs/${encodeURIComponent(kbId)}/rules/${encodeURIComponent(ruleId)}`);
    }
}
/** A certainty factor exactly as the protocol sent it (no reformatting). */
export function cfText(cf) {
    return String(cf);
}
