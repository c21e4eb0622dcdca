// Maps the API's coded validation messages onto form fields, mirroring
// the server-side codes so inline errors match what a resubmission would
// report.

export interface ServerMessage {
  code: string;
  field: string;
  severity: string;
  detail: string;
}

// server field name -> form input name
const FIELD_ALIASES: Record<string, string> = {
  external_url: "url",
  id_override: "url",
};

export function mapServerErrors(
  messages: ServerMessage[],
): Map<string, string[]> {
  const byField = new Map<string, string[]>();
  for (const message of messages) {
    if (message.severity !== "error") continue;
    const field = FIELD_ALIASES[message.field] ?? message.field;
    const text = message.detail || message.code;
    const existing = byField.get(field) ?? [];
    byField.set(field, [...existing, text]);
  }
  return byField;
}

export interface RequiredCheck {
  field: string;
  message: string;
}

/** Client-side required checks, same fields the server hard-rejects on. */
export function requiredFieldErrors(values: {
  title: string;
  url: string;
}): RequiredCheck[] {
  const errors: RequiredCheck[] = [];
  if (!values.title.trim()) {
    errors.push({ field: "title", message: "Title is required" });
  }
  if (!values.url.trim()) {
    errors.push({ field: "url", message: "External URL is required" });
  } else if (!/^https?:\/\/.+/.test(values.url.trim())) {
    errors.push({ field: "url", message: "URL must start with http:// or https://" });
  }
  return errors;
}
