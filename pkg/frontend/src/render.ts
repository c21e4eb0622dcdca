// DOM renderers.  Pure functions of (container, data, callbacks); all
// state transitions flow back through the callbacks so the URL stays the
// single source of truth.

import { PortalState } from "./state";
import {
  FACET_KINDS,
  FacetKind,
  ItemResponse,
  SearchResponse,
  VocabularyPayload,
} from "./types";

const SIDEBAR_LIMIT = 10;

export const KIND_TITLES: Record<FacetKind, string> = {
  resource_type: "Resource type",
  media_type: "Media type",
  discipline: "Discipline",
  target_group: "Target group",
  proficiency_level: "Proficiency level",
};

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function labelFor(
  vocab: VocabularyPayload | null,
  kind: FacetKind,
  termId: string,
): string {
  const term = vocab?.[kind]?.find((t) => t.id === termId);
  return term ? term.label : termId;
}

export interface SearchCallbacks {
  onQuery(text: string): void;
  onToggleFacet(kind: FacetKind, termId: string): void;
  onPage(pageIndex: number): void;
  onOpenItem(id: string): void;
}

export function renderSearchPage(
  container: HTMLElement,
  state: PortalState,
  result: SearchResponse,
  vocab: VocabularyPayload | null,
  callbacks: SearchCallbacks,
): void {
  container.innerHTML = "";

  const form = el("form", "search-box");
  const input = el("input");
  input.type = "search";
  input.name = "q";
  input.value = state.query;
  input.placeholder = "Search learning resources…";
  const button = el("button", undefined, "Search");
  button.type = "submit";
  form.append(input, button);
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    callbacks.onQuery(input.value);
  });
  container.append(form);

  const layout = el("div", "layout");
  layout.append(
    renderFacetSidebar(state, result, vocab, callbacks),
    renderResults(state, result, callbacks),
  );
  container.append(layout);
}

function renderFacetSidebar(
  state: PortalState,
  result: SearchResponse,
  vocab: VocabularyPayload | null,
  callbacks: SearchCallbacks,
): HTMLElement {
  const sidebar = el("aside", "facets");
  for (const kind of FACET_KINDS) {
    const counts = result.facet_counts[kind] ?? {};
    const selected = state.facets[kind] ?? [];
    const entries = Object.entries(counts).sort(
      ([idA, countA], [idB, countB]) =>
        countB - countA ||
        labelFor(vocab, kind, idA).localeCompare(labelFor(vocab, kind, idB)),
    );
    if (!entries.length && !selected.length) continue;

    const group = el("section", "facet-group");
    group.dataset.kind = kind;
    group.append(el("h3", undefined, KIND_TITLES[kind]));
    const list = el("ul");

    const render = (limit: number) => {
      list.innerHTML = "";
      for (const [termId, count] of entries.slice(0, limit)) {
        const item = el("li", "facet-value");
        const check = el("input");
        check.type = "checkbox";
        check.checked = selected.includes(termId);
        check.dataset.term = termId;
        check.addEventListener("change", () =>
          callbacks.onToggleFacet(kind, termId),
        );
        const label = el("label");
        label.append(
          check,
          el("span", "facet-label", labelFor(vocab, kind, termId)),
          el("span", "facet-count", String(count)),
        );
        item.append(label);
        list.append(item);
      }
    };
    render(SIDEBAR_LIMIT);
    group.append(list);

    if (entries.length > SIDEBAR_LIMIT) {
      const expander = el(
        "button",
        "facet-expander",
        `Show all ${entries.length}`,
      );
      expander.type = "button";
      expander.addEventListener("click", () => {
        render(entries.length);
        expander.remove();
      });
      group.append(expander);
    }
    sidebar.append(group);
  }
  return sidebar;
}

function renderResults(
  state: PortalState,
  result: SearchResponse,
  callbacks: SearchCallbacks,
): HTMLElement {
  const main = el("main", "results");
  main.append(
    el(
      "h2",
      "result-count",
      `${result.total} result${result.total === 1 ? "" : "s"}`,
    ),
  );
  for (const hit of result.hits) {
    const card = el("article", "result-card");
    const link = el("a", "result-title", hit.title);
    link.href = `?item=${encodeURIComponent(hit.id)}`;
    link.addEventListener("click", (event) => {
      event.preventDefault();
      callbacks.onOpenItem(hit.id);
    });
    card.append(link);
    if (hit.snippet) card.append(el("p", "result-snippet", hit.snippet));
    main.append(card);
  }

  const lastPage = Math.max(0, Math.ceil(result.total / result.page_size) - 1);
  if (lastPage > 0) {
    const nav = el("nav", "pager");
    const previous = el("button", undefined, "Previous");
    previous.disabled = state.pageIndex === 0;
    previous.addEventListener("click", () =>
      callbacks.onPage(state.pageIndex - 1),
    );
    const next = el("button", undefined, "Next");
    next.disabled = state.pageIndex >= lastPage;
    next.addEventListener("click", () => callbacks.onPage(state.pageIndex + 1));
    nav.append(
      previous,
      el("span", undefined, `page ${state.pageIndex + 1} of ${lastPage + 1}`),
      next,
    );
    main.append(nav);
  }
  return main;
}

/** Detail page: absent fields are omitted entirely, never shown blank. */
export function renderItemPage(
  container: HTMLElement,
  item: ItemResponse,
  onBack: () => void,
): void {
  container.innerHTML = "";
  const page = el("article", "item-detail");
  const back = el("a", "back-link", "← back to search");
  back.href = "?";
  back.addEventListener("click", (event) => {
    event.preventDefault();
    onBack();
  });
  page.append(back, el("h2", undefined, item.title));

  const link = el("a", "external-link", item.url);
  link.href = item.url;
  link.target = "_blank";
  link.rel = "noopener";
  page.append(link);

  const rows = el("dl", "metadata");
  const addRow = (term: string, value: string) => {
    if (!value) return;
    rows.append(el("dt", undefined, term), el("dd", undefined, value));
  };
  addRow(
    "Authors",
    item.authors
      .map((a) => (a.identifier ? `${a.name} (${a.identifier})` : a.name))
      .join("; "),
  );
  addRow("Description", item.description);
  addRow("License", item.license);
  addRow("Keywords", item.keywords.join(", "));
  addRow("Languages", item.languages.join(", "));
  addRow("Published", item.date_published ?? "");
  addRow("Community", item.communities.join(", "));
  addRow("Collections", item.collections.join(", "));
  for (const kind of FACET_KINDS) {
    addRow(
      KIND_TITLES[kind],
      (item.classifier_labels[kind] ?? []).map((t) => t.label).join(", "),
    );
  }
  page.append(rows);
  container.append(page);
}

export function renderNotFound(container: HTMLElement, onBack: () => void): void {
  container.innerHTML = "";
  const page = el("div", "not-found");
  page.append(el("h2", undefined, "Resource not found"));
  page.append(
    el("p", undefined, "This item does not exist or was removed."),
  );
  const back = el("a", "back-link", "← back to search");
  back.href = "?";
  back.addEventListener("click", (event) => {
    event.preventDefault();
    onBack();
  });
  page.append(back);
  container.append(page);
}

export function renderErrorBanner(
  container: HTMLElement,
  message: string,
  onRetry: () => void,
): void {
  const banner = el("div", "error-banner");
  banner.append(el("span", undefined, message));
  const retry = el("button", undefined, "Retry");
  retry.addEventListener("click", () => {
    banner.remove();
    onRetry();
  });
  banner.append(retry);
  container.prepend(banner);
}
