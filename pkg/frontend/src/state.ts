// Portal state lives entirely in the URL query string, so any search view
// is deep-linkable and reload reproduces it exactly.

import { FACET_KINDS, FacetKind } from "./types";

export type Route =
  | { page: "search" }
  | { page: "item"; id: string }
  | { page: "submit" };

export interface PortalState {
  route: Route;
  query: string;
  facets: Partial<Record<FacetKind, string[]>>;
  pageIndex: number;
}

export function emptyState(): PortalState {
  return { route: { page: "search" }, query: "", facets: {}, pageIndex: 0 };
}

export function parseState(queryString: string): PortalState {
  const params = new URLSearchParams(queryString);
  const state = emptyState();
  const view = params.get("view");
  const itemId = params.get("item");
  if (view === "submit") {
    state.route = { page: "submit" };
  } else if (itemId) {
    state.route = { page: "item", id: itemId };
  }
  state.query = params.get("q") ?? "";
  const page = Number(params.get("page") ?? "0");
  state.pageIndex = Number.isInteger(page) && page > 0 ? page : 0;
  for (const raw of params.getAll("facets")) {
    const sep = raw.indexOf(":");
    if (sep <= 0 || sep === raw.length - 1) continue;
    const kind = raw.slice(0, sep) as FacetKind;
    if (!FACET_KINDS.includes(kind)) continue;
    const term = raw.slice(sep + 1);
    const existing = state.facets[kind] ?? [];
    if (!existing.includes(term)) {
      state.facets[kind] = [...existing, term];
    }
  }
  return state;
}

export function serializeState(state: PortalState): string {
  const params = new URLSearchParams();
  if (state.route.page === "submit") {
    params.set("view", "submit");
  } else if (state.route.page === "item") {
    params.set("item", state.route.id);
  }
  if (state.query.trim()) params.set("q", state.query.trim());
  // fixed kind order + sorted terms keep serialization canonical
  for (const kind of FACET_KINDS) {
    for (const term of [...(state.facets[kind] ?? [])].sort()) {
      params.append("facets", `${kind}:${term}`);
    }
  }
  if (state.pageIndex > 0) params.set("page", String(state.pageIndex));
  const qs = params.toString();
  return qs ? `?${qs}` : "";
}

/** Toggling the same facet term twice returns to the original state. */
export function toggleFacet(
  state: PortalState,
  kind: FacetKind,
  term: string,
): PortalState {
  const current = state.facets[kind] ?? [];
  const next = current.includes(term)
    ? current.filter((t) => t !== term)
    : [...current, term];
  const facets = { ...state.facets };
  if (next.length) {
    facets[kind] = next;
  } else {
    delete facets[kind];
  }
  // changing filters restarts pagination
  return { ...state, facets, pageIndex: 0 };
}

export function withQuery(state: PortalState, query: string): PortalState {
  return { ...state, query, pageIndex: 0 };
}

export function clearFacetTerm(
  state: PortalState,
  kind: FacetKind,
  term: string,
): PortalState {
  const current = state.facets[kind] ?? [];
  if (!current.includes(term)) return state;
  return toggleFacet(state, kind, term);
}

export function searchParams(state: PortalState): URLSearchParams {
  const params = new URLSearchParams();
  if (state.query.trim()) params.set("q", state.query.trim());
  for (const kind of FACET_KINDS) {
    for (const term of state.facets[kind] ?? []) {
      params.append("facets", `${kind}:${term}`);
    }
  }
  params.set("page", String(state.pageIndex));
  params.set("page_size", "10");
  return params;
}
