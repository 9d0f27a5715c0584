// Right-sidebar chat: optimistic user bubble with rollback on failure,
// mirroring the backend's atomic-pair persistence (a failed turn persists
// nothing, so the bubble must vanish too). One in-flight request at most.

import { ApiClient, ApiError } from "./api";
import type { ChatMessage } from "./types";

export interface ChatBubble {
  sender: "user" | "empa";
  content: string;
  pending?: boolean;
}

export class ChatController {
  bubbles: ChatBubble[] = [];
  banner: string | null = null;
  sending = false;

  constructor(
    private readonly api: ApiClient,
    private readonly userId: string,
  ) {}

  loadHistory(messages: ChatMessage[]): void {
    this.bubbles = messages.map((m) => ({ sender: m.sender, content: m.content }));
  }

  get sendEnabled(): boolean {
    return !this.sending;
  }

  canSend(draft: string): boolean {
    return this.sendEnabled && draft.trim().length > 0;
  }

  async send(draft: string): Promise<void> {
    if (!this.canSend(draft)) return;
    this.banner = null;
    this.sending = true;
    const optimistic: ChatBubble = {
      sender: "user",
      content: draft,
      pending: true,
    };
    this.bubbles.push(optimistic);
    try {
      const { reply } = await this.api.sendMessage(this.userId, draft);
      optimistic.pending = false;
      this.bubbles.push({ sender: "empa", content: reply.content });
    } catch (err) {
      // roll back the phantom bubble: the server persisted nothing
      this.bubbles = this.bubbles.filter((b) => b !== optimistic);
      if (err instanceof ApiError && err.status === 502) {
        this.banner =
          "Empa couldn't reply just now. Your message wasn't lost from view; try sending it again.";
      } else if (err instanceof ApiError) {
        this.banner = err.body.message;
      } else {
        this.banner = "Network problem; please try again.";
      }
    } finally {
      this.sending = false;
    }
  }
}
