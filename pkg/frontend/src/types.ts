/** Wire types mirroring the /v1 API schemas. */

export type SearchMode = "quick" | "base" | "project" | "lifetime" | "random";

export type Label = "relevant" | "irrelevant";

export interface ResultRow {
  provider: string;
  doc_id: string;
  title: string;
  abstract: string;
  alt_ids: [string, string][];
  score: number;
  rank: number;
  label: Label | null;
}

export interface SearchResponse {
  query_id: string;
  query: string;
  mode: string;
  project_id: string | null;
  partial: boolean;
  failures: { provider: string; term: string; error: string }[];
  total: number;
  suggestions_available: boolean;
  results: ResultRow[];
}

export interface QueryView {
  query_id: string;
  query: string;
  mode: string;
  project_id: string | null;
  total: number;
  suggestions_available: boolean;
  results: ResultRow[];
}

export interface RerankResponse {
  query_id: string;
  total: number;
  results: ResultRow[];
}

export interface Suggestion {
  term: string;
  direction: "add" | "remove";
  z_score: number;
  suggested_query: string;
}

export interface ProjectInfo {
  project_id: string;
  name: string;
  statistics: {
    query_count: number;
    relevant_count: number;
    irrelevant_count: number;
  };
}

export interface UserSession {
  user_id: string;
  display_name: string;
  token: string;
}

export interface ApiErrorBody {
  error: string;
  message: string;
  position?: number | null;
}
