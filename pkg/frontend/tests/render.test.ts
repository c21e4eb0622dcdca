import { beforeEach, describe, expect, it, vi } from "vitest";

import { renderItemPage, renderNotFound, renderSearchPage } from "../src/render";
import { emptyState, toggleFacet } from "../src/state";
import { FacetKind, ItemResponse, SearchResponse } from "../src/types";

function emptyCounts(): SearchResponse["facet_counts"] {
  return {
    resource_type: {},
    media_type: {},
    discipline: {},
    target_group: {},
    proficiency_level: {},
  };
}

function makeResult(overrides: Partial<SearchResponse> = {}): SearchResponse {
  return {
    total: 0,
    page: 0,
    page_size: 10,
    hits: [],
    facet_counts: emptyCounts(),
    ...overrides,
  };
}

const noop = {
  onQuery: () => {},
  onToggleFacet: (_k: FacetKind, _t: string) => {},
  onPage: (_p: number) => {},
  onOpenItem: (_id: string) => {},
};

let container: HTMLElement;
beforeEach(() => {
  document.body.innerHTML = '<div id="app"></div>';
  container = document.getElementById("app")!;
});

describe("search page", () => {
  it("renders the result count header", () => {
    renderSearchPage(container, emptyState(), makeResult({ total: 172 }), null, noop);
    expect(container.querySelector(".result-count")!.textContent).toBe(
      "172 results",
    );
  });

  it("ranks sidebar values by count descending then label", () => {
    const counts = emptyCounts();
    counts.discipline = { "x:b": 5, "x:a": 5, "x:c": 9 };
    renderSearchPage(
      container, emptyState(), makeResult({ total: 9, facet_counts: counts }),
      null, noop,
    );
    const labels = [...container.querySelectorAll(
      '[data-kind="discipline"] .facet-label',
    )].map((node) => node.textContent);
    expect(labels).toEqual(["x:c", "x:a", "x:b"]);
  });

  it("shows ten values with an expander for the rest", () => {
    const counts = emptyCounts();
    for (let i = 0; i < 14; i++) counts.discipline[`x:t${String(i).padStart(2, "0")}`] = 14 - i;
    renderSearchPage(
      container, emptyState(), makeResult({ total: 14, facet_counts: counts }),
      null, noop,
    );
    const group = container.querySelector('[data-kind="discipline"]')!;
    expect(group.querySelectorAll("li")).toHaveLength(10);
    const expander = group.querySelector<HTMLButtonElement>(".facet-expander")!;
    expect(expander.textContent).toBe("Show all 14");
    expander.click();
    expect(group.querySelectorAll("li")).toHaveLength(14);
    expect(group.querySelector(".facet-expander")).toBeNull();
  });

  it("checks selected facet terms and fires the toggle callback", () => {
    const counts = emptyCounts();
    counts.target_group = { "dalia-tg:bachelor": 172, "dalia-tg:master": 90 };
    const state = toggleFacet(emptyState(), "target_group", "dalia-tg:bachelor");
    const onToggleFacet = vi.fn();
    renderSearchPage(
      container, state, makeResult({ total: 172, facet_counts: counts }),
      null, { ...noop, onToggleFacet },
    );
    const boxes = container.querySelectorAll<HTMLInputElement>(
      '[data-kind="target_group"] input[type=checkbox]',
    );
    const bachelor = [...boxes].find((b) => b.dataset.term === "dalia-tg:bachelor")!;
    expect(bachelor.checked).toBe(true);
    bachelor.dispatchEvent(new Event("change"));
    expect(onToggleFacet).toHaveBeenCalledWith("target_group", "dalia-tg:bachelor");
  });

  it("result cards open the item via callback", () => {
    const onOpenItem = vi.fn();
    renderSearchPage(
      container, emptyState(),
      makeResult({
        total: 1,
        hits: [{ id: "abc", title: "A Title", snippet: "text", score: 1 }],
      }),
      null, { ...noop, onOpenItem },
    );
    container.querySelector<HTMLAnchorElement>(".result-title")!.click();
    expect(onOpenItem).toHaveBeenCalledWith("abc");
  });
});

function makeItem(overrides: Partial<ItemResponse> = {}): ItemResponse {
  return {
    id: "b37ddf6e-f136-4230-8418-faf18c4c34d2",
    title: "Chemotion ELN Instructional Videos",
    description: "Video series.",
    languages: ["de", "en"],
    keywords: ["eln", "rdm"],
    license: "CC-BY-4.0",
    url: "https://zenodo.org/records/chemotion-eln-instructional-videos",
    date_published: "2023-02-15",
    authors: [{ name: "Fink, A.", identifier: "0000-0002-1825-0097" }],
    communities: ["NFDI4Chem"],
    collections: ["chemistry-rdm"],
    classifier_labels: {
      resource_type: [{ id: "dalia-rt:tutorial", label: "tutorial" }],
      media_type: [{ id: "dalia-mt:video", label: "video" }],
      discipline: [{ id: "dalia-dc:inorganic-chemistry", label: "inorganic chemistry" }],
      target_group: [{ id: "dalia-tg:bachelor", label: "bachelor" }],
      proficiency_level: [{ id: "dalia-pl:beginner", label: "beginner" }],
    },
    revision: 1,
    ...overrides,
  };
}

describe("item page", () => {
  it("renders every populated metadata row", () => {
    renderItemPage(container, makeItem(), () => {});
    const terms = [...container.querySelectorAll("dt")].map((n) => n.textContent);
    expect(terms).toEqual([
      "Authors", "Description", "License", "Keywords", "Languages",
      "Published", "Community", "Collections", "Resource type", "Media type",
      "Discipline", "Target group", "Proficiency level",
    ]);
    expect(container.textContent).toContain("Fink, A. (0000-0002-1825-0097)");
  });

  it("omits absent fields instead of rendering blanks", () => {
    renderItemPage(
      container,
      makeItem({ license: "", keywords: [], communities: [] }),
      () => {},
    );
    const terms = [...container.querySelectorAll("dt")].map((n) => n.textContent);
    expect(terms).not.toContain("License");
    expect(terms).not.toContain("Keywords");
    expect(terms).not.toContain("Community");
    expect(container.textContent).not.toContain("undefined");
  });

  it("external link href equals the record url byte-for-byte", () => {
    const item = makeItem();
    renderItemPage(container, item, () => {});
    const link = container.querySelector<HTMLAnchorElement>(".external-link")!;
    expect(link.getAttribute("href")).toBe(item.url);
  });

  it("not-found page offers a way back", () => {
    const onBack = vi.fn();
    renderNotFound(container, onBack);
    expect(container.textContent).toContain("Resource not found");
    container.querySelector<HTMLAnchorElement>(".back-link")!.click();
    expect(onBack).toHaveBeenCalled();
  });
});
