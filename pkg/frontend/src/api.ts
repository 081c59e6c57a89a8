// Typed client for the session API. Every piece of displayed state comes
// from these responses; the UI never solves or classifies anything itself.

export type HistoryStep = [string, string];

export interface SessionView {
  session_id: string;
  scenario_id: string;
  status: string;
  history: HistoryStep[];
  consistent: { correct: string[]; incorrect: string[] };
  violation: HistoryStep | null;
  heuristic_value: number | null;
  inputs: string[];
  outputs: string[];
  unused_inputs: string[];
  producible: Record<string, string[]>;
  created: number;
  updated: number;
}

export interface RankedInput {
  input: string;
  score: number | null;
  exact: boolean;
}

export interface AdviceView {
  ranked: RankedInput[];
  depth_used: number;
  nodes_expanded: number;
  mode: string;
  truncated: boolean;
  fallback: boolean;
}

export type FeasibilityView = { min_tests: number } | { infeasible: true };

export type TreeNode =
  | { type: "leaf"; verdict: string; consistent: string[] }
  | { type: "branch"; input: string; children: Record<string, TreeNode> };

export interface StrategyView {
  k: number;
  tree: TreeNode;
}

export interface ScenarioSummary {
  scenario_id: string;
  k: number | null;
  counts: { functions: number; correct: number; inputs: number; outputs: number };
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    public detail: string,
  ) {
    super(`${code}: ${detail}`);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private baseUrl = "",
    private fetchFn: FetchLike = (input, init) => globalThis.fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { "content-type": "application/json" } };
    if (body !== undefined) {
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchFn(this.baseUrl + path, init);
    const payload = await response.json().catch(() => ({}));
    if (!response.ok) {
      const err = payload as { error?: string; detail?: string };
      throw new ApiError(response.status, err.error ?? "error", err.detail ?? response.statusText);
    }
    return payload as T;
  }

  createScenario(document: unknown): Promise<ScenarioSummary> {
    return this.request("POST", "/scenarios", document);
  }

  createSession(scenarioId: string): Promise<SessionView> {
    return this.request("POST", "/sessions", { scenario_id: scenarioId });
  }

  getSession(sessionId: string): Promise<SessionView> {
    return this.request("GET", `/sessions/${sessionId}`);
  }

  observe(sessionId: string, input: string, output: string): Promise<SessionView> {
    return this.request("POST", `/sessions/${sessionId}/observe`, { input, output });
  }

  advice(sessionId: string, mode = "exact"): Promise<AdviceView> {
    return this.request("GET", `/sessions/${sessionId}/advice?mode=${mode}`);
  }

  feasibility(sessionId: string): Promise<FeasibilityView> {
    return this.request("GET", `/sessions/${sessionId}/feasibility`);
  }

  strategy(scenarioId: string, k?: number): Promise<StrategyView> {
    const suffix = k === undefined ? "" : `?k=${k}`;
    return this.request("GET", `/scenarios/${scenarioId}/strategy${suffix}`);
  }

  deleteSession(sessionId: string): Promise<{ deleted: string }> {
    return this.request("DELETE", `/sessions/${sessionId}`);
  }
}
