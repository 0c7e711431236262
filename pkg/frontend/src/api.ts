/** Typed REST client for the /v1 service; the only network surface. */

import type {
  ApiErrorBody,
  Label,
  ProjectInfo,
  QueryView,
  RerankResponse,
  SearchMode,
  SearchResponse,
  Suggestion,
  UserSession,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly body: ApiErrorBody,
  ) {
    super(body.message || body.error);
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export interface SearchParams {
  query: string;
  mode?: SearchMode;
  projectId?: string | null;
  pageSize?: number;
  seed?: number;
}

export class ApiClient {
  private token: string | null = null;

  constructor(
    readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  setToken(token: string): void {
    this.token = token;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = { "Content-Type": "application/json" };
    if (this.token) {
      headers["Authorization"] = `Bearer ${this.token}`;
    }
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      let parsed: ApiErrorBody = { error: `HTTP ${response.status}`, message: "" };
      try {
        parsed = (await response.json()) as ApiErrorBody;
      } catch {
        // non-JSON error body; keep the status shell
      }
      throw new ApiError(response.status, parsed);
    }
    return (await response.json()) as T;
  }

  async createUser(displayName: string): Promise<UserSession> {
    const session = await this.request<UserSession>("POST", "/v1/users", {
      display_name: displayName,
    });
    this.setToken(session.token);
    return session;
  }

  health(): Promise<{ status: string; providers: string[] }> {
    return this.request("GET", "/v1/health");
  }

  async listProjects(): Promise<ProjectInfo[]> {
    const body = await this.request<{ projects: ProjectInfo[] }>("GET", "/v1/projects");
    return body.projects;
  }

  createProject(name: string): Promise<ProjectInfo> {
    return this.request("POST", "/v1/projects", { name });
  }

  search(params: SearchParams): Promise<SearchResponse> {
    return this.request("POST", "/v1/search", {
      query: params.query,
      mode: params.mode ?? "quick",
      project_id: params.projectId ?? null,
      page_size: params.pageSize,
      seed: params.seed ?? 0,
    });
  }

  setLabel(queryId: string, provider: string, docId: string, label: Label) {
    return this.request<{ query_id: string; labels: Record<string, Label> }>(
      "POST",
      `/v1/queries/${queryId}/labels`,
      { provider, doc_id: docId, label },
    );
  }

  queryView(queryId: string): Promise<QueryView> {
    return this.request("GET", `/v1/queries/${queryId}`);
  }

  rerank(queryId: string): Promise<RerankResponse> {
    return this.request("POST", `/v1/queries/${queryId}/rerank`);
  }

  async suggestions(queryId: string): Promise<Suggestion[]> {
    const body = await this.request<{ suggestions: Suggestion[] }>(
      "GET",
      `/v1/queries/${queryId}/suggestions`,
    );
    return body.suggestions;
  }
}
