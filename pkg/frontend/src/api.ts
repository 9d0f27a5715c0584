// Thin typed client over fetch. The only configuration is the API base URL;
// everything else is refetched per request to match the stateless backend.

import type {
  ApiErrorBody,
  ChatMessage,
  ModuleDefinition,
  ModuleProgress,
  QuizAttemptPayload,
  QuizResult,
  RegistrationFields,
  RegistrationResponse,
} from "./types";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly body: ApiErrorBody,
  ) {
    super(body.message);
  }
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      let parsed: ApiErrorBody;
      try {
        parsed = (await response.json()) as ApiErrorBody;
      } catch {
        parsed = { code: "unknown", message: `HTTP ${response.status}` };
      }
      throw new ApiError(response.status, parsed);
    }
    return (await response.json()) as T;
  }

  register(fields: RegistrationFields): Promise<RegistrationResponse> {
    return this.request("POST", "/api/submit", fields);
  }

  sendMessage(userId: string, message: string): Promise<{ reply: ChatMessage }> {
    return this.request("POST", "/api/chatbot", {
      user_id: userId,
      message,
    });
  }

  history(userId: string): Promise<{ messages: ChatMessage[] }> {
    return this.request("GET", `/api/chat-history/${userId}`);
  }

  progress(userId: string): Promise<{ modules: ModuleProgress[] }> {
    return this.request("GET", `/api/progress/${userId}`);
  }

  curriculum(): Promise<{ modules: ModuleDefinition[] }> {
    return this.request("GET", "/api/curriculum");
  }

  submitQuiz(moduleId: string, payload: QuizAttemptPayload): Promise<QuizResult> {
    return this.request("POST", `/api/quiz/${moduleId}`, payload);
  }

  submitReflection(
    moduleId: string,
    userId: string,
    text: string,
  ): Promise<{ feedback: ChatMessage }> {
    return this.request("POST", `/api/reflection/${moduleId}`, {
      user_id: userId,
      text,
    });
  }

  acknowledge(
    moduleId: string,
    userId: string,
  ): Promise<{ modules: ModuleProgress[] }> {
    return this.request("POST", `/api/acknowledge/${moduleId}`, {
      user_id: userId,
    });
  }
}
