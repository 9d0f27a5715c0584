// Client session: only the user_id persists locally; history and progress
// are server snapshots, refetched rather than derived client-side.

import type { ApiClient } from "./api";
import type { ChatMessage, ModuleProgress } from "./types";

const USER_ID_KEY = "empa.user_id";

export interface StorageLike {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
  removeItem(key: string): void;
}

export class ClientSession {
  history: ChatMessage[] = [];
  progress: ModuleProgress[] = [];

  constructor(
    public readonly userId: string,
    private readonly api: ApiClient,
  ) {}

  async refresh(): Promise<void> {
    const [history, progress] = await Promise.all([
      this.api.history(this.userId),
      this.api.progress(this.userId),
    ]);
    this.history = history.messages;
    this.progress = progress.modules;
  }
}

export function savedUserId(storage: StorageLike): string | null {
  return storage.getItem(USER_ID_KEY);
}

export function saveUserId(storage: StorageLike, userId: string): void {
  storage.setItem(USER_ID_KEY, userId);
}

export function clearSession(storage: StorageLike): void {
  storage.removeItem(USER_ID_KEY);
}
