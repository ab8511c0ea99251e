/**
 * Client for the consultation service wire protocol.
 *
 * Thin by design: it moves JSON, it never computes. Every certainty factor
 * shown in the UI is the number the server sent, stringified as-is.
 */

export interface KbInfo {
  kb_id: string;
  revision: number;
  goals: string[];
  rule_count: number;
}

export interface Question {
  question_id: number;
  attribute: string;
  value: unknown;
  prompt: string;
  menu: unknown[] | null;
}

export interface RankedEntry {
  value: unknown;
  cf: number;
}

export interface ConsultResult {
  goal: string;
  ranked: RankedEntry[];
}

export interface SessionView {
  session_id: string;
  kb_id: string;
  revision: number;
  goal: string;
  state: "awaiting_answer" | "running" | "done" | "aborted";
  question?: Question;
  result?: ConsultResult;
  error?: { code: string; message: string };
}

export interface TraceNode {
  kind: string;
  label: string;
  cf: number;
  id?: string;
  rule_cf?: number;
  premise_cf?: number;
  prompt?: string;
  unevaluated?: string[];
  children: TraceNode[];
}

export interface TraceCandidate {
  value: unknown;
  cf: number;
  trace: TraceNode;
}

export interface TraceDoc {
  goal: string;
  candidates: TraceCandidate[];
}

export interface NetResult {
  object: string;
  via: string | null;
}

export interface NetAnswer {
  relation: string;
  node: string;
  results: NetResult[];
}

export interface Diagnostic {
  severity: string;
  code: string;
  message: string;
  line: number | null;
  col: number | null;
  rendered: string;
}

export interface RuleEntry {
  id: string;
  position: number;
  source: string;
}

export interface RuleListing {
  revision: number;
  rules: RuleEntry[];
}

export interface EditResponse {
  revision: number;
  rule?: { id: string; source: string };
  warnings: Diagnostic[];
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
    public diagnostics: Diagnostic[] = [],
  ) {
    super(message);
  }
}

export type Fetcher = (url: string, init?: RequestInit) => Promise<Response>;

export class Client {
  constructor(
    private base: string = "",
    private fetcher: Fetcher = (url, init) => fetch(url, init),
  ) {}

  private async call<T>(method: string, path: string, body?: unknown): Promise<T> {
    let response: Response;
    try {
      response = await this.fetcher(this.base + path, {
        method,
        headers: body === undefined ? {} : { "Content-Type": "application/json" },
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (err) {
      throw new ApiError(0, "NETWORK", `cannot reach the service: ${String(err)}`);
    }
    const payload = (await response.json()) as Record<string, unknown>;
    if (!response.ok) {
      const error = (payload["error"] ?? {}) as {
        code?: string;
        message?: string;
        diagnostics?: Diagnostic[];
      };
      throw new ApiError(
        response.status,
        error.code ?? "UNKNOWN",
        error.message ?? response.statusText,
        error.diagnostics ?? [],
      );
    }
    return payload as T;
  }

  async listKbs(): Promise<KbInfo[]> {
    const body = await this.call<{ kbs: KbInfo[] }>("GET", "/kbs");
    return body.kbs;
  }

  createSession(kbId: string, goal: string): Promise<SessionView> {
    return this.call("POST", `/kbs/${encodeURIComponent(kbId)}/sessions`, { goal });
  }

  getSession(sessionId: string): Promise<SessionView> {
    return this.call("GET", `/sessions/${encodeURIComponent(sessionId)}`);
  }

  submitAnswer(sessionId: string, questionId: number, cf: number): Promise<SessionView> {
    return this.call("POST", `/sessions/${encodeURIComponent(sessionId)}/answers`, {
      question_id: questionId,
      cf,
    });
  }

  getTrace(sessionId: string): Promise<TraceDoc> {
    return this.call("GET", `/sessions/${encodeURIComponent(sessionId)}/trace`);
  }

  netQuery(kbId: string, relation: string, node: string, inherit: boolean): Promise<NetAnswer> {
    const params = new URLSearchParams({ relation, node, inherit: String(inherit) });
    return this.call("GET", `/kbs/${encodeURIComponent(kbId)}/net?${params}`);
  }

  netDescribe(kbId: string, node: string): Promise<{ node: string; relations: Record<string, NetAnswer> }> {
    const params = new URLSearchParams({ node });
    return this.call("GET", `/kbs/${encodeURIComponent(kbId)}/net/describe?${params}`);
  }

  listRules(kbId: string): Promise<RuleListing> {
    return this.call("GET", `/kbs/${encodeURIComponent(kbId)}/rules`);
  }

  addRule(kbId: string, source: string): Promise<EditResponse> {
    return this.call("POST", `/kbs/${encodeURIComponent(kbId)}/rules`, { source });
  }

  updateRule(kbId: string, ruleId: string, source: string): Promise<EditResponse> {
    return this.call(
      "PUT",
      `/kbs/${encodeURIComponent(kbId)}/rules/${encodeURIComponent(ruleId)}`,
      { source },
    );
  }

  deleteRule(kbId: string, ruleId: string): Promise<EditResponse> {
    return this.call(
      "DELETE",
      `/kbs/${encodeURIComponent(kbId)}/rules/${encodeURIComponent(ruleId)}`,
    );
  }
}

/** A certainty factor exactly as the protocol sent it (no reformatting). */
export function cfText(cf: number): string {
  return String(cf);
}
