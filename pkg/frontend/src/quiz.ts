// Drag-and-drop matching board. A character occupies at most one bin and
// submit stays disabled until every character is placed; the submit payload
// matches the server's quiz-attempt schema exactly.

import type { QuizAttemptPayload, QuizDefinition, QuizResult } from "./types";

export class DragDropBoard {
  private assignments = new Map<string, string>();

  constructor(readonly quiz: QuizDefinition) {}

  place(characterId: string, category: string): void {
    if (!this.quiz.items.some((i) => i.character_id === characterId)) {
      throw new Error(`unknown character: ${characterId}`);
    }
    if (!this.quiz.categories.includes(category)) {
      throw new Error(`unknown category: ${category}`);
    }
    this.assignments.set(characterId, category);
  }

  remove(characterId: string): void {
    this.assignments.delete(characterId);
  }

  binFor(characterId: string): string | undefined {
    return this.assignments.get(characterId);
  }

  unplacedCharacters(): string[] {
    return this.quiz.items
      .map((i) => i.character_id)
      .filter((id) => !this.assignments.has(id));
  }

  get submitEnabled(): boolean {
    return this.unplacedCharacters().length === 0;
  }

  buildPayload(userId: string): QuizAttemptPayload {
    if (!this.submitEnabled) {
      throw new Error("place every character before submitting");
    }
    return {
      user_id: userId,
      quiz_id: this.quiz.quiz_id,
      assignments: Object.fromEntries(this.assignments),
    };
  }

  perCharacterFeedback(result: QuizResult): "passed" | "retry" {
    return result.passed ? "passed" : "retry";
  }

  reset(): void {
    this.assignments.clear();
  }
}
