// Community submission form: interchange fields, classifier dropdowns
// from the vocabulary payload, client-side required checks mirroring the
// server codes, and field-level placement of server 422 messages.

import { mapServerErrors, requiredFieldErrors, ServerMessage } from "./errors";
import { FACET_KINDS, FacetKind, VocabularyPayload } from "./types";
import { KIND_TITLES } from "./render";

const CLASSIFIER_FIELDS: Record<FacetKind, string> = {
  resource_type: "resource_types",
  media_type: "media_types",
  discipline: "disciplines",
  target_group: "target_groups",
  proficiency_level: "proficiency_levels",
};

export interface SubmitHandlers {
  submit(record: Record<string, unknown>, submitter: string): Promise<{
    id: string;
    state: string;
  }>;
  onBack(): void;
}

function field(
  name: string,
  labelText: string,
  input: HTMLElement,
): HTMLElement {
  const wrap = document.createElement("div");
  wrap.className = "form-field";
  wrap.dataset.field = name;
  const label = document.createElement("label");
  label.textContent = labelText;
  label.append(input);
  wrap.append(label);
  const errors = document.createElement("ul");
  errors.className = "field-errors";
  wrap.append(errors);
  return wrap;
}

function textInput(name: string): HTMLInputElement {
  const input = document.createElement("input");
  input.name = name;
  input.type = "text";
  return input;
}

export function collectRecord(form: HTMLFormElement): Record<string, unknown> {
  const data = new FormData(form);
  const str = (name: string) => String(data.get(name) ?? "").trim();
  const list = (name: string) =>
    str(name)
      .split(";")
      .map((value) => value.trim())
      .filter(Boolean);
  const record: Record<string, unknown> = {
    title: str("title"),
    description: str("description"),
    url: str("url"),
    license: str("license"),
    languages: list("languages"),
    keywords: list("keywords"),
    date_published: str("date_published") || null,
    authors: list("authors").map((entry) => {
      const [name, identifier] = entry.split("|").map((part) => part.trim());
      return { name, identifier: identifier || null };
    }),
    communities: list("communities"),
    collections: list("collections"),
  };
  for (const kind of FACET_KINDS) {
    const select = form.querySelector<HTMLSelectElement>(
      `select[name=${CLASSIFIER_FIELDS[kind]}]`,
    );
    record[CLASSIFIER_FIELDS[kind]] = select
      ? [...select.selectedOptions].map((option) => option.value).filter(Boolean)
      : [];
  }
  return record;
}

export function placeFieldErrors(
  form: HTMLFormElement,
  byField: Map<string, string[]>,
): void {
  form
    .querySelectorAll(".field-errors")
    .forEach((node) => (node.innerHTML = ""));
  for (const [fieldName, messages] of byField) {
    const selector = /^[\w-]+$/.test(fieldName)
      ? `[data-field=${fieldName}] .field-errors`
      : ".form-errors";
    const target =
      form.querySelector(selector) ?? form.querySelector(".form-errors");
    if (!target) continue;
    for (const message of messages) {
      const item = document.createElement("li");
      item.textContent = message;
      target.append(item);
    }
  }
}

export function renderSubmitPage(
  container: HTMLElement,
  vocab: VocabularyPayload,
  handlers: SubmitHandlers,
): void {
  container.innerHTML = "";
  const form = document.createElement("form");
  form.className = "submit-form";
  form.noValidate = true;

  form.append(field("title", "Title *", textInput("title")));
  const description = document.createElement("textarea");
  description.name = "description";
  form.append(field("description", "Description", description));
  form.append(field("url", "External URL *", textInput("url")));
  form.append(field("license", "License", textInput("license")));
  form.append(field("languages", "Languages (;-separated)", textInput("languages")));
  form.append(field("keywords", "Keywords (;-separated)", textInput("keywords")));
  form.append(field("date_published", "Date published (YYYY-MM-DD)", textInput("date_published")));
  form.append(field("authors", "Authors (Name|ORCID; …)", textInput("authors")));
  form.append(field("communities", "Communities (;-separated)", textInput("communities")));
  form.append(field("collections", "Collections (;-separated)", textInput("collections")));

  for (const kind of FACET_KINDS) {
    const select = document.createElement("select");
    select.name = CLASSIFIER_FIELDS[kind];
    select.multiple = true;
    for (const term of vocab[kind] ?? []) {
      const option = document.createElement("option");
      option.value = term.id;
      option.textContent = term.label;
      select.append(option);
    }
    form.append(field(CLASSIFIER_FIELDS[kind], KIND_TITLES[kind], select));
  }

  const formErrors = document.createElement("ul");
  formErrors.className = "form-errors";
  form.append(formErrors);
  const submit = document.createElement("button");
  submit.type = "submit";
  submit.textContent = "Submit for review";
  form.append(submit);

  form.addEventListener("submit", async (event) => {
    event.preventDefault();
    const record = collectRecord(form);
    const local = requiredFieldErrors({
      title: record.title as string,
      url: record.url as string,
    });
    if (local.length) {
      // invalid form never reaches the network
      placeFieldErrors(
        form,
        new Map(local.map((e) => [e.field, [e.message]])),
      );
      return;
    }
    placeFieldErrors(form, new Map());
    try {
      const submitter = "portal";
      const created = await handlers.submit(record, submitter);
      container.innerHTML = "";
      const confirmation = document.createElement("div");
      confirmation.className = "confirmation";
      const heading = document.createElement("h2");
      heading.textContent = "Submission received";
      const text = document.createElement("p");
      text.textContent = `Your submission is ${created.state.toLowerCase()} review. Reference: ${created.id}`;
      text.dataset.submissionId = created.id;
      confirmation.append(heading, text);
      container.append(confirmation);
    } catch (error: unknown) {
      const body = (error as { body?: { details?: { messages?: ServerMessage[] } } })
        .body;
      const messages = body?.details?.messages;
      if (messages) {
        placeFieldErrors(form, mapServerErrors(messages));
      } else {
        formErrors.innerHTML = "";
        const item = document.createElement("li");
        item.textContent = "Submission failed; please try again.";
        formErrors.append(item);
      }
    }
  });

  container.append(form);
}
