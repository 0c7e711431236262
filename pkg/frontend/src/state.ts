/** Framework-free application state.
 *
 * All ranking comes from the server; this store only tracks what the user
 * sees.  Labels update optimistically and roll back to the last
 * acknowledged server state if the call fails.  Clicking a suggestion
 * pre-fills the search box and never auto-submits: the user edits and
 * submits themselves.
 */

import { ApiClient, ApiError } from "./api.js";
import type {
  Label,
  ProjectInfo,
  ResultRow,
  SearchResponse,
  Suggestion,
  UserSession,
} from "./types.js";

export type Screen = "quick-search" | "project-list" | "project-view";

export interface ParseProblem {
  message: string;
  position: number | null;
}

const docKey = (row: ResultRow) => `${row.provider}:${row.doc_id}`;

export class AppStore {
  screen: Screen = "quick-search";
  session: UserSession | null = null;
  projects: ProjectInfo[] = [];
  activeProjectId: string | null = null;

  searchBox = "";
  currentQuery: SearchResponse | null = null;
  results: ResultRow[] = [];
  labels = new Map<string, Label>();
  private acknowledged = new Map<string, Label>();

  suggestions: Suggestion[] | null = null;
  suggestionsHint: string | null = null;

  partialBanner: string | null = null;
  parseProblem: ParseProblem | null = null;
  errorBanner: string | null = null;
  busy = false;

  private listeners = new Set<() => void>();

  constructor(readonly api: ApiClient) {}

  subscribe(listener: () => void): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) listener();
  }

  labelOf(row: ResultRow): Label | null {
    return this.labels.get(docKey(row)) ?? null;
  }

  async init(displayName: string): Promise<void> {
    this.session = await this.api.createUser(displayName);
    this.notify();
  }

  // -- screens --------------------------------------------------------------

  openQuickSearch(): void {
    this.screen = "quick-search";
    this.activeProjectId = null;
    this.resetQueryContext();
    this.notify();
  }

  async openProjectList(): Promise<void> {
    this.projects = await this.api.listProjects();
    this.screen = "project-list";
    this.notify();
  }

  async createProject(name: string): Promise<ProjectInfo> {
    const project = await this.api.createProject(name);
    this.projects = [...this.projects, project];
    this.notify();
    return project;
  }

  openProject(projectId: string): void {
    if (this.activeProjectId !== projectId) {
      // switching context: nothing from the previous project leaks over
      this.resetQueryContext();
    }
    this.activeProjectId = projectId;
    this.screen = "project-view";
    this.notify();
  }

  private resetQueryContext(): void {
    this.currentQuery = null;
    this.results = [];
    this.labels = new Map();
    this.acknowledged = new Map();
    this.suggestions = null;
    this.suggestionsHint = null;
    this.partialBanner = null;
    this.parseProblem = null;
    this.errorBanner = null;
  }

  // -- searching --------------------------------------------------------------

  setSearchBox(text: string): void {
    this.searchBox = text;
    this.notify();
  }

  async submitSearch(pageSize = 10): Promise<SearchResponse | null> {
    this.parseProblem = null;
    this.errorBanner = null;
    this.busy = true;
    this.notify();
    try {
      const response = await this.api.search({
        query: this.searchBox,
        mode: this.activeProjectId ? "project" : "quick",
        projectId: this.activeProjectId,
        pageSize,
      });
      this.currentQuery = response;
      this.results = response.results;
      this.labels = new Map();
      this.acknowledged = new Map();
      this.suggestions = null;
      this.suggestionsHint = null;
      this.partialBanner = response.partial
        ? `Some sources failed: ${response.failures.map((f) => f.provider).join(", ")}`
        : null;
      return response;
    } catch (err) {
      if (err instanceof ApiError && err.status === 400 && err.body.position != null) {
        this.parseProblem = { message: err.body.message, position: err.body.position };
      } else if (err instanceof ApiError) {
        this.errorBanner = err.body.message || err.body.error;
      } else {
        this.errorBanner = String(err);
      }
      return null;
    } finally {
      this.busy = false;
      this.notify();
    }
  }

  async loadMore(): Promise<void> {
    if (!this.currentQuery || this.results.length >= this.currentQuery.total) return;
    const view = await this.api.queryView(this.currentQuery.query_id);
    const known = new Set(this.results.map(docKey));
    this.results = [...this.results, ...view.results.filter((r) => !known.has(docKey(r)))];
    this.notify();
  }

  // -- labeling (optimistic) ------------------------------------------------------

  async setLabel(row: ResultRow, label: Label): Promise<boolean> {
    if (!this.currentQuery) return false;
    const key = docKey(row);
    this.labels.set(key, label);
    this.notify();
    try {
      await this.api.setLabel(this.currentQuery.query_id, row.provider, row.doc_id, label);
      this.acknowledged = new Map(this.labels);
      return true;
    } catch (err) {
      // roll back to the last acknowledged server state
      this.labels = new Map(this.acknowledged);
      this.errorBanner = err instanceof ApiError ? err.body.message : String(err);
      this.notify();
      return false;
    }
  }

  labeledCount(): number {
    return this.labels.size;
  }

  // -- reorder and suggestions ------------------------------------------------------

  async reorder(): Promise<void> {
    if (!this.currentQuery) return;
    const response = await this.api.rerank(this.currentQuery.query_id);
    this.results = response.results;
    this.notify();
  }

  async openSuggestionPanel(): Promise<void> {
    if (!this.currentQuery) return;
    this.suggestionsHint = null;
    try {
      this.suggestions = await this.api.suggestions(this.currentQuery.query_id);
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        this.suggestions = null;
        this.suggestionsHint = "Label at least one result to get suggestions.";
      } else {
        throw err;
      }
    }
    this.notify();
  }

  addSuggestions(): Suggestion[] {
    return (this.suggestions ?? []).filter((s) => s.direction === "add");
  }

  removeSuggestions(): Suggestion[] {
    return (this.suggestions ?? []).filter((s) => s.direction === "remove");
  }

  /** Pre-fill only; the user reviews and submits the query themselves. */
  clickSuggestion(suggestion: Suggestion): void {
    this.searchBox = suggestion.suggested_query;
    this.notify();
  }
}
