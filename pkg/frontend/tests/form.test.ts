import { beforeEach, describe, expect, it, vi } from "vitest";

import { collectRecord, renderSubmitPage } from "../src/form";
import { VocabularyPayload } from "../src/types";

const vocab: VocabularyPayload = {
  resource_type: [{ id: "dalia-rt:tutorial", label: "tutorial", parent: null, aliases: [] }],
  media_type: [{ id: "dalia-mt:video", label: "video", parent: null, aliases: [] }],
  discipline: [{ id: "dalia-dc:chemistry", label: "chemistry", parent: null, aliases: [] }],
  target_group: [{ id: "dalia-tg:bachelor", label: "bachelor", parent: null, aliases: [] }],
  proficiency_level: [{ id: "dalia-pl:beginner", label: "beginner", parent: null, aliases: [] }],
};

let container: HTMLElement;
beforeEach(() => {
  document.body.innerHTML = '<div id="app"></div>';
  container = document.getElementById("app")!;
});

function setField(name: string, value: string) {
  const input = container.querySelector<HTMLInputElement>(`[name=${name}]`)!;
  input.value = value;
}

function submitForm() {
  container
    .querySelector("form")!
    .dispatchEvent(new Event("submit", { cancelable: true }));
}

function flush() {
  return new Promise((resolve) => setTimeout(resolve, 0));
}

describe("submission form", () => {
  it("populates classifier dropdowns from the vocabulary payload", () => {
    renderSubmitPage(container, vocab, { submit: vi.fn(), onBack: () => {} });
    const select = container.querySelector<HTMLSelectElement>(
      "select[name=target_groups]",
    )!;
    expect([...select.options].map((o) => o.value)).toEqual(["dalia-tg:bachelor"]);
    expect([...select.options].map((o) => o.textContent)).toEqual(["bachelor"]);
  });

  it("shows inline errors for missing title without any network call", async () => {
    const submit = vi.fn();
    renderSubmitPage(container, vocab, { submit, onBack: () => {} });
    setField("url", "https://example.org/x");
    submitForm();
    await flush();
    const titleErrors = container.querySelector(
      "[data-field=title] .field-errors",
    )!;
    expect(titleErrors.textContent).toContain("Title is required");
    expect(submit).not.toHaveBeenCalled();
  });

  it("submits a valid form and shows the confirmation with the id", async () => {
    const submit = vi.fn().mockResolvedValue({ id: "sub-1", state: "Pending" });
    renderSubmitPage(container, vocab, { submit, onBack: () => {} });
    setField("title", "An OER");
    setField("url", "https://example.org/oer");
    submitForm();
    await flush();
    expect(submit).toHaveBeenCalledOnce();
    const record = submit.mock.calls[0][0];
    expect(record.title).toBe("An OER");
    const confirmation = container.querySelector<HTMLElement>(
      ".confirmation p",
    )!;
    expect(confirmation.dataset.submissionId).toBe("sub-1");
    expect(confirmation.textContent).toContain("pending");
  });

  it("places server 422 codes on the matching fields", async () => {
    const submit = vi.fn().mockRejectedValue({
      status: 422,
      body: {
        code: "VALIDATION_FAILED",
        message: "invalid",
        details: {
          messages: [
            { code: "INVALID_URL", field: "external_url", severity: "error", detail: "bad scheme" },
            { code: "FUTURE_DATE", field: "date_published", severity: "error", detail: "in the future" },
          ],
        },
      },
    });
    renderSubmitPage(container, vocab, { submit, onBack: () => {} });
    setField("title", "An OER");
    setField("url", "https://example.org/oer");
    submitForm();
    await flush();
    expect(
      container.querySelector("[data-field=url] .field-errors")!.textContent,
    ).toContain("bad scheme");
    expect(
      container.querySelector("[data-field=date_published] .field-errors")!
        .textContent,
    ).toContain("in the future");
  });

  it("collects multi-valued cells and author identifiers", () => {
    renderSubmitPage(container, vocab, { submit: vi.fn(), onBack: () => {} });
    setField("title", "T");
    setField("url", "https://example.org/t");
    setField("keywords", "rdm; fair ;");
    setField("authors", "Jane Doe|0000-0002-1825-0097;Max M");
    const record = collectRecord(container.querySelector("form")!);
    expect(record.keywords).toEqual(["rdm", "fair"]);
    expect(record.authors).toEqual([
      { name: "Jane Doe", identifier: "0000-0002-1825-0097" },
      { name: "Max M", identifier: null },
    ]);
  });
});
