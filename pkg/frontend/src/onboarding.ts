// Onboarding form: client-side validation, then POST /api/submit with the
// exact seven-field registration schema. Server 422/409 errors map back to
// the offending field (or a banner for conflicts).

import { ApiClient, ApiError } from "./api";
import type { RegistrationFields, RegistrationResponse } from "./types";

export const REGISTRATION_FIELDS: (keyof RegistrationFields)[] = [
  "name",
  "email",
  "year_of_study",
  "gender",
  "major",
  "instructor",
  "course",
];

const EMAIL_RE = /^[^\s@]+@[^\s@.]+(\.[^\s@.]+)+$/;

export function emailLooksValid(candidate: string): boolean {
  return EMAIL_RE.test(candidate);
}

export interface OnboardingOutcome {
  ok: boolean;
  response?: RegistrationResponse;
  fieldErrors: Partial<Record<keyof RegistrationFields, string>>;
  banner?: string;
}

export function validateForm(
  input: Record<string, string>,
): Partial<Record<keyof RegistrationFields, string>> {
  const errors: Partial<Record<keyof RegistrationFields, string>> = {};
  for (const field of REGISTRATION_FIELDS) {
    if (!input[field] || !input[field].trim()) {
      errors[field] = "required";
    }
  }
  if (!errors.email && !emailLooksValid(input.email)) {
    errors.email = "invalid email address";
  }
  return errors;
}

export function buildPayload(input: Record<string, string>): RegistrationFields {
  // exactly the seven schema fields, nothing extra carried over from the form
  const payload = {} as RegistrationFields;
  for (const field of REGISTRATION_FIELDS) {
    payload[field] = input[field].trim();
  }
  return payload;
}

export async function submitOnboarding(
  api: ApiClient,
  input: Record<string, string>,
): Promise<OnboardingOutcome> {
  const fieldErrors = validateForm(input);
  if (Object.keys(fieldErrors).length > 0) {
    return { ok: false, fieldErrors };
  }
  try {
    const response = await api.register(buildPayload(input));
    return { ok: true, response, fieldErrors: {} };
  } catch (err) {
    if (err instanceof ApiError) {
      if (err.status === 422 && err.body.field) {
        return {
          ok: false,
          fieldErrors: { [err.body.field]: err.body.message },
        };
      }
      if (err.status === 409) {
        return {
          ok: false,
          fieldErrors: {},
          banner: "That email is already registered.",
        };
      }
      return { ok: false, fieldErrors: {}, banner: err.body.message };
    }
    throw err;
  }
}
