// Thin fetch client.  Search calls are "latest wins": a stale response is
// dropped when a newer query has been issued since.

import { PortalState, searchParams } from "./state";
import {
  ApiError,
  ItemResponse,
  SearchResponse,
  SubmissionResponse,
  VocabularyPayload,
} from "./types";

declare global {
  interface Window {
    OERDEX_API_BASE?: string;
  }
}

export function apiBase(): string {
  if (typeof window !== "undefined" && window.OERDEX_API_BASE) {
    return window.OERDEX_API_BASE.replace(/\/$/, "");
  }
  return "";
}

export class ApiFailure extends Error {
  constructor(
    public status: number,
    public body: ApiError,
  ) {
    super(body.message);
  }
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  const response = await fetch(apiBase() + path, init);
  if (!response.ok) {
    let body: ApiError = {
      code: "HTTP_" + response.status,
      message: response.statusText,
      details: {},
    };
    try {
      body = (await response.json()) as ApiError;
    } catch {
      // non-JSON error body; keep the synthetic envelope
    }
    throw new ApiFailure(response.status, body);
  }
  return (await response.json()) as T;
}

let searchGeneration = 0;

/** Resolves to null when a newer search superseded this one. */
export async function search(
  state: PortalState,
): Promise<SearchResponse | null> {
  const generation = ++searchGeneration;
  const result = await request<SearchResponse>(
    "/search?" + searchParams(state).toString(),
  );
  return generation === searchGeneration ? result : null;
}

export function fetchItem(id: string): Promise<ItemResponse> {
  return request<ItemResponse>(`/items/${encodeURIComponent(id)}`);
}

export function fetchVocabularies(): Promise<VocabularyPayload> {
  return request<VocabularyPayload>("/vocabularies");
}

export function submitRecord(
  record: Record<string, unknown>,
  submitter: string,
): Promise<SubmissionResponse> {
  return request<SubmissionResponse>("/submissions", {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({ record, submitter }),
  });
}
