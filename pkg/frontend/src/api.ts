// Thin typed client over fetch. Every method returns the parsed JSON
// body; non-2xx responses raise ApiFailure carrying the error payload.

import type {
  ApiError, PolicyGraphDoc, QueryResponse, SenseOption, SessionState,
  SubmitResponse, SuggestionsResponse,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiFailure extends Error {
  readonly status: number;
  readonly body: ApiError;

  constructor(status: number, body: ApiError) {
    super(`${status}: ${body.error ?? "request failed"}`);
    this.status = status;
    this.body = body;
  }
}

export interface MutationResponse {
  session: string;
  seq: number;
  options?: SenseOption[];
  instance?: unknown;
  state: SessionState;
}

export class ApiClient {
  private readonly base: string;
  private readonly fetchImpl: FetchLike;

  constructor(base: string, fetchImpl?: FetchLike) {
    this.base = base.replace(/\/$/, "");
    this.fetchImpl = fetchImpl ?? ((url, init) => fetch(url, init));
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: {} };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const resp = await this.fetchImpl(this.base + path, init);
    const payload = await resp.json();
    if (!resp.ok) {
      throw new ApiFailure(resp.status, payload as ApiError);
    }
    return payload as T;
  }

  createSession(template: string) {
    return this.request<MutationResponse>("POST", "/sessions", { template });
  }

  slotText(session: string, path: string, text: string, expectedSeq?: number) {
    return this.request<MutationResponse>(
      "POST", `/sessions/${session}/slots/${path}/text`,
      { text, expected_seq: expectedSeq ?? null },
    );
  }

  slotSense(session: string, path: string, frame: string, expectedSeq?: number) {
    return this.request<MutationResponse>(
      "POST", `/sessions/${session}/slots/${path}/sense`,
      { frame, expected_seq: expectedSeq ?? null },
    );
  }

  slotRefine(session: string, path: string) {
    return this.request<MutationResponse>(
      "POST", `/sessions/${session}/slots/${path}/refine`, {},
    );
  }

  slotLeave(session: string, path: string) {
    return this.request<MutationResponse>(
      "POST", `/sessions/${session}/slots/${path}/leave`, {},
    );
  }

  slotDelete(session: string, path: string) {
    return this.request<MutationResponse>(
      "DELETE", `/sessions/${session}/slots/${path}`,
    );
  }

  suggestions(session: string, path: string) {
    return this.request<SuggestionsResponse>(
      "GET", `/sessions/${session}/suggestions?path=${encodeURIComponent(path)}`,
    );
  }

  submit(session: string) {
    return this.request<SubmitResponse>("POST", `/sessions/${session}/submit`);
  }

  policyBuild(doc: unknown) {
    return this.request<{ states: number; rules: number }>("POST", "/policy/build", doc);
  }

  policyFacts(facts: unknown) {
    return this.request<{ version: number; facts: number }>("POST", "/policy/facts", facts);
  }

  policyQuery(asof: string, state?: string) {
    const qs = state ? `?asof=${asof}&state=${encodeURIComponent(state)}` : `?asof=${asof}`;
    return this.request<QueryResponse>("GET", `/policy/query${qs}`);
  }

  policyGraph() {
    return this.request<PolicyGraphDoc>("GET", "/policy/graph");
  }
}
