// Wire types for the Empa backend JSON endpoints.

export type Sender = "user" | "empa";

export interface ChatMessage {
  message_id: string;
  user_id: string;
  sender: Sender;
  content: string;
  timestamp: string;
  seq: number;
}

export interface RegistrationFields {
  name: string;
  email: string;
  year_of_study: string;
  gender: string;
  major: string;
  instructor: string;
  course: string;
}

export interface RegistrationResponse {
  user_id: string;
  greeting: ChatMessage;
}

export interface ModuleProgress {
  id: string;
  completed: boolean;
  unlocked: boolean;
}

export interface QuizItem {
  character_id: string;
  label: string;
}

export interface QuizDefinition {
  quiz_id: string;
  categories: string[];
  items: QuizItem[];
}

export interface ModuleDefinition {
  id: string;
  title: string;
  media: string[];
  prompts: string[];
  completion_rule: string;
  quiz: QuizDefinition | null;
}

export interface QuizAttemptPayload {
  user_id: string;
  quiz_id: string;
  assignments: Record<string, string>;
}

export interface QuizResult {
  correct_count: number;
  total: number;
  score: number;
  passed: boolean;
  attempt_count: number;
}

export interface ApiErrorBody {
  code: string;
  message: string;
  field?: string | null;
}
