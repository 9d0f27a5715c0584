import type { FetchLike } from "../src/api";

export interface RecordedRequest {
  url: string;
  method: string;
  body: unknown;
}

// Minimal fetch stub: routes "METHOD path-prefix" to a canned status/body
// and records every request for assertions.
export function mockFetch(
  routes: Record<string, { status: number; body: unknown }>,
): { fetch: FetchLike; requests: RecordedRequest[] } {
  const requests: RecordedRequest[] = [];
  const fetch: FetchLike = async (url, init) => {
    const method = init?.method ?? "GET";
    const body = init?.body ? JSON.parse(init.body as string) : undefined;
    requests.push({ url, method, body });
    const key = Object.keys(routes).find((k) => {
      const [m, prefix] = k.split(" ");
      return m === method && url.includes(prefix);
    });
    if (!key) throw new Error(`no route for ${method} ${url}`);
    const { status, body: responseBody } = routes[key];
    return new Response(JSON.stringify(responseBody), {
      status,
      headers: { "Content-Type": "application/json" },
    });
  };
  return { fetch, requests };
}

// Validates the subset of JSON Schema the exported server schemas use:
// object type, required, per-property type, additionalProperties value type.
export function validateAgainstSchema(
  payload: unknown,
  schema: {
    type: string;
    required?: string[];
    properties?: Record<string, { type?: string; additionalProperties?: { type: string } }>;
  },
): string[] {
  const problems: string[] = [];
  if (schema.type === "object") {
    if (typeof payload !== "object" || payload === null || Array.isArray(payload)) {
      return [`expected object, got ${typeof payload}`];
    }
    const record = payload as Record<string, unknown>;
    for (const name of schema.required ?? []) {
      if (!(name in record)) problems.push(`missing required property: ${name}`);
    }
    for (const [name, value] of Object.entries(record)) {
      const spec = schema.properties?.[name];
      if (!spec) {
        problems.push(`unexpected property: ${name}`);
        continue;
      }
      if (spec.type === "string" && typeof value !== "string") {
        problems.push(`${name}: expected string`);
      }
      if (spec.type === "object") {
        if (typeof value !== "object" || value === null) {
          problems.push(`${name}: expected object`);
        } else if (spec.additionalProperties?.type === "string") {
          for (const [k, v] of Object.entries(value as Record<string, unknown>)) {
            if (typeof v !== "string") problems.push(`${name}.${k}: expected string`);
          }
        }
      }
    }
  }
  return problems;
}
