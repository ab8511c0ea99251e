/** Test doubles: a scripted fetch and canned protocol payloads. */
/** A Fetcher serving scripted routes; records every request it saw. */
export function stubFetch(routes) {
    const calls = [];
    const fetcher = async (url, init) => {
        const method = init?.method ?? "GET";
        const path = url.replace(/^https?:\/\/[^/]+/, "");
        const body = init?.body ? JSON.parse(init.body) : undefined;
        calls.push({ method, path, body });
        for (const route of routes) {
            const match = route.path.exec(path);
            if (route.method === method && match) {
                const { status, payload } = route.handler(body, match);
                return responseOf(status, payload);
            }
        }
        return responseOf(404, { error: { code: "NOT_FOUND", message: `no stub for ${method} ${path}` } });
    };
    return { fetcher, calls };
}
function responseOf(status, payload) {
    return {
        ok: status < 400,
        status,
        statusText: String(status),
        json: async () => payload,
    };
}
export const FLU_TRACE_DOC = {
    goal: "diagnosis",
    candidates: [
        {
            value: "flu",
            cf: 0.56,
            trace: {
                kind: "goal",
                label: "diagnosis = flu",
                cf: 0.56,
                children: [
                    {
                        kind: "rule",
                        label: "rule r1",
                        cf: 0.56,
                        id: "r1",
                        rule_cf: 0.7,
                        premise_cf: 0.8,
                        children: [
                            {
                                kind: "all",
                                label: "and",
                                cf: 0.8,
                                children: [
                                    { kind: "ask", label: "fever = yes", cf: 0.9, prompt: "Fever?", children: [] },
                                    { kind: "ask", label: "cough = yes", cf: 0.8, prompt: "Cough?", children: [] },
                                ],
                            },
                        ],
                    },
                ],
            },
        },
        {
            value: "tb",
            cf: 0.0,
            trace: {
                kind: "goal",
                label: "diagnosis = tb",
                cf: 0.0,
                children: [
                    {
                        kind: "rule",
                        label: "rule r2",
                        cf: 0.0,
                        id: "r2",
                        rule_cf: 0.8,
                        premise_cf: 0.0,
                        children: [
                            {
                                kind: "pruned",
                                label: "and",
                                cf: 0.0,
                                unevaluated: ["weight_loss = yes"],
                                children: [
                                    { kind: "test", label: "fever = yes (known)", cf: 0.9, children: [] },
                                    { kind: "ask", label: "night_sweats = yes", cf: 0.0, prompt: "Sweats?", children: [] },
                                ],
                            },
                        ],
                    },
                ],
            },
        },
    ],
};
