// Application shell: routes from the URL, renders, and keeps the URL in
// sync with every state transition (pushState on user actions, popstate
// to go back).

import { ApiFailure, fetchItem, fetchVocabularies, search, submitRecord } from "./api";
import { renderSubmitPage } from "./form";
import {
  renderErrorBanner,
  renderItemPage,
  renderNotFound,
  renderSearchPage,
} from "./render";
import {
  clearFacetTerm,
  parseState,
  PortalState,
  serializeState,
  toggleFacet,
  withQuery,
} from "./state";
import { FacetKind, VocabularyPayload } from "./types";

let vocab: VocabularyPayload | null = null;

function navigate(state: PortalState, push = true): void {
  const url = serializeState(state) || location.pathname;
  if (push) {
    history.pushState(null, "", url);
  }
  void render(state);
}

async function render(state: PortalState): Promise<void> {
  const container = document.getElementById("app");
  if (!container) return;

  if (state.route.page === "item") {
    const itemId = state.route.id;
    try {
      const item = await fetchItem(itemId);
      renderItemPage(container, item, () =>
        navigate({ ...state, route: { page: "search" } }),
      );
    } catch (error) {
      if (error instanceof ApiFailure && error.status === 404) {
        renderNotFound(container, () =>
          navigate({ ...state, route: { page: "search" } }),
        );
      } else {
        renderErrorBanner(container, "Could not load the resource.", () =>
          void render(state),
        );
      }
    }
    return;
  }

  if (state.route.page === "submit") {
    if (!vocab) vocab = await fetchVocabularies();
    renderSubmitPage(container, vocab, {
      submit: submitRecord,
      onBack: () => navigate({ ...state, route: { page: "search" } }),
    });
    return;
  }

  try {
    const result = await search(state);
    if (result === null) return; // superseded by a newer query
    renderSearchPage(container, state, result, vocab, {
      onQuery: (text) => navigate(withQuery(state, text)),
      onToggleFacet: (kind: FacetKind, termId: string) =>
        navigate(toggleFacet(state, kind, termId)),
      onPage: (pageIndex) => navigate({ ...state, pageIndex }),
      onOpenItem: (id) => navigate({ ...state, route: { page: "item", id } }),
    });
  } catch (error) {
    if (error instanceof ApiFailure && error.status === 400) {
      // unknown-term 400: clear the offending filter and retry
      const details = error.body.details as { term?: string; kind?: string };
      if (details?.term && details?.kind) {
        navigate(
          clearFacetTerm(state, details.kind as FacetKind, details.term),
        );
      } else {
        navigate({ ...state, facets: {} });
      }
      return;
    }
    renderErrorBanner(container, "Search failed.", () => void render(state));
  }
}

export function boot(): void {
  vocab = null;
  void fetchVocabularies()
    .then((payload) => {
      vocab = payload;
    })
    .catch(() => {
      vocab = null; // labels fall back to term ids
    });
  window.addEventListener("popstate", () =>
    void render(parseState(location.search)),
  );
  void render(parseState(location.search));
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  boot();
}
