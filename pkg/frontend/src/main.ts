// DOM wiring for the single-page app: onboarding, sequential module
// navigation, content pane, and the right-sidebar chat.

import { ApiClient, ApiError } from "./api";
import { ChatController } from "./chat";
import { ModuleNavigator } from "./nav";
import { REGISTRATION_FIELDS, submitOnboarding } from "./onboarding";
import { DragDropBoard } from "./quiz";
import { ClientSession, saveUserId, savedUserId } from "./session";
import type { ModuleDefinition } from "./types";

const API_BASE =
  (window as unknown as { EMPA_API_BASE?: string }).EMPA_API_BASE ??
  "http://localhost:8000";

const api = new ApiClient(API_BASE);
const root = document.getElementById("app") as HTMLElement;

let session: ClientSession | null = null;
let chat: ChatController | null = null;
let navigator_: ModuleNavigator | null = null;
let curriculum: ModuleDefinition[] = [];
let currentModule = "";

function el(tag: string, attrs: Record<string, string> = {}, text = ""): HTMLElement {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (text) node.textContent = text;
  return node;
}

async function boot(): Promise<void> {
  const existing = savedUserId(window.localStorage);
  curriculum = (await api.curriculum()).modules;
  if (existing) {
    try {
      session = new ClientSession(existing, api);
      await session.refresh();
      renderApp();
      return;
    } catch {
      // stale id; fall through to onboarding
    }
  }
  renderOnboarding();
}

function renderOnboarding(): void {
  root.innerHTML = "";
  const form = el("form", { class: "onboarding" });
  form.appendChild(el("h1", {}, "Welcome to Empa"));
  form.appendChild(
    el("p", {}, "Enter your name and academic details to begin."),
  );
  const labels: Record<string, string> = {
    name: "Name",
    email: "Email",
    year_of_study: "Year of study",
    gender: "Gender",
    major: "Major",
    instructor: "Instructor",
    course: "Course",
  };
  for (const field of REGISTRATION_FIELDS) {
    const row = el("label", { class: "field" }, labels[field]);
    row.appendChild(el("input", { name: field, type: "text" }));
    row.appendChild(el("span", { class: "error", "data-error": field }));
    form.appendChild(row);
  }
  const banner = el("div", { class: "banner", role: "alert" });
  form.appendChild(banner);
  form.appendChild(el("button", { type: "submit" }, "Start learning"));

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    void (async () => {
      const input: Record<string, string> = {};
      form.querySelectorAll("input").forEach((node) => {
        input[node.name] = node.value;
      });
      const outcome = await submitOnboarding(api, input);
      form.querySelectorAll<HTMLElement>("[data-error]").forEach((node) => {
        node.textContent = outcome.fieldErrors[node.dataset.error as never] ?? "";
      });
      banner.textContent = outcome.banner ?? "";
      if (outcome.ok && outcome.response) {
        saveUserId(window.localStorage, outcome.response.user_id);
        session = new ClientSession(outcome.response.user_id, api);
        await session.refresh();
        renderApp();
      }
    })();
  });
  root.appendChild(form);
}

function renderApp(): void {
  if (!session) return;
  navigator_ = new ModuleNavigator(session.progress);
  chat = new ChatController(api, session.userId);
  chat.loadHistory(session.history);
  currentModule = navigator_.lastUnlocked();

  root.innerHTML = "";
  const layout = el("div", { class: "layout" });
  layout.appendChild(el("nav", { id: "nav" }));
  layout.appendChild(el("main", { id: "content" }));
  layout.appendChild(el("aside", { id: "chat" }));
  root.appendChild(layout);

  window.addEventListener("hashchange", () => {
    if (!navigator_) return;
    const result = navigator_.deepLink(window.location.hash);
    currentModule = result.moduleId;
    renderContent(result.notice);
    renderNav();
  });

  renderNav();
  renderContent();
  renderChat();
}

function renderNav(): void {
  if (!session || !navigator_) return;
  const nav = document.getElementById("nav") as HTMLElement;
  nav.innerHTML = "";
  for (const entry of session.progress) {
    const definition = curriculum.find((m) => m.id === entry.id);
    const button = el(
      "button",
      { class: entry.unlocked ? "module" : "module locked" },
      `${definition?.title ?? entry.id}${entry.completed ? " ✓" : ""}`,
    ) as HTMLButtonElement;
    button.disabled = !entry.unlocked;
    button.addEventListener("click", () => {
      if (!navigator_) return;
      const result = navigator_.navigate(entry.id);
      currentModule = result.moduleId;
      renderContent(result.notice);
    });
    nav.appendChild(button);
  }
}

async function refreshProgress(): Promise<void> {
  if (!session || !navigator_) return;
  await session.refresh();
  navigator_.update(session.progress);
  renderNav();
}

function renderContent(notice?: string): void {
  if (!session) return;
  const definition = curriculum.find((m) => m.id === currentModule);
  const content = document.getElementById("content") as HTMLElement;
  content.innerHTML = "";
  if (notice) content.appendChild(el("div", { class: "notice" }, notice));
  if (!definition) return;
  content.appendChild(el("h2", {}, definition.title));

  for (const url of definition.media) {
    const link = el("a", { href: url, target: "_blank" }, "Watch: " + url);
    content.appendChild(el("p", { class: "media" })).appendChild(link);
  }

  if (definition.quiz) renderQuiz(content, definition);

  if (definition.prompts.length > 0) renderReflection(content, definition);

  if (definition.completion_rule === "view_only") {
    const done = el("button", {}, "I've met Empa — continue") as HTMLButtonElement;
    done.addEventListener("click", () => {
      void api
        .acknowledge(definition.id, session!.userId)
        .then(refreshProgress);
    });
    content.appendChild(done);
  }
}

function renderReflection(content: HTMLElement, definition: ModuleDefinition): void {
  const section = el("section", { class: "reflection" });
  section.appendChild(el("h3", {}, "Reflect"));
  for (const prompt of definition.prompts) {
    section.appendChild(el("p", { class: "prompt" }, prompt));
  }
  const textarea = el("textarea", { rows: "5" }) as HTMLTextAreaElement;
  const status = el("div", { class: "status" });
  const submit = el("button", {}, "Share with Empa") as HTMLButtonElement;
  submit.addEventListener("click", () => {
    void (async () => {
      if (!session || !textarea.value.trim()) return;
      submit.disabled = true;
      try {
        const { feedback } = await api.submitReflection(
          definition.id,
          session.userId,
          textarea.value,
        );
        status.textContent = `Empa: ${feedback.content}`;
        textarea.value = "";
        await refreshProgress();
        await reloadChat();
      } catch (err) {
        status.textContent =
          err instanceof ApiError ? err.body.message : "Something went wrong.";
      } finally {
        submit.disabled = false;
      }
    })();
  });
  section.appendChild(textarea);
  section.appendChild(submit);
  section.appendChild(status);
  content.appendChild(section);
}

function renderQuiz(content: HTMLElement, definition: ModuleDefinition): void {
  const quiz = definition.quiz!;
  const board = new DragDropBoard(quiz);
  const section = el("section", { class: "quiz" });
  section.appendChild(el("h3", {}, "Match each character to a cultural category"));

  const bins = el("div", { class: "bins" });
  const result = el("div", { class: "quiz-result" });
  const submit = el("button", {}, "Check my matches") as HTMLButtonElement;

  const render = () => {
    bins.innerHTML = "";
    for (const item of quiz.items) {
      const row = el("div", { class: "quiz-row" });
      row.appendChild(el("span", {}, item.label));
      const select = el("select") as HTMLSelectElement;
      select.appendChild(el("option", { value: "" }, "— drag here —"));
      for (const category of quiz.categories) {
        const option = el("option", { value: category }, category.replace(/_/g, " "));
        select.appendChild(option);
      }
      select.value = board.binFor(item.character_id) ?? "";
      select.addEventListener("change", () => {
        if (select.value) board.place(item.character_id, select.value);
        else board.remove(item.character_id);
        submit.disabled = !board.submitEnabled;
      });
      row.appendChild(select);
      bins.appendChild(row);
    }
    submit.disabled = !board.submitEnabled;
  };

  submit.addEventListener("click", () => {
    void (async () => {
      if (!session) return;
      try {
        const outcome = await api.submitQuiz(
          definition.id,
          board.buildPayload(session.userId),
        );
        result.textContent = outcome.passed
          ? `All ${outcome.total} correct — nicely done!`
          : `${outcome.correct_count} of ${outcome.total} correct. Try again!`;
        if (!outcome.passed) {
          board.reset();
          render();
        }
        await refreshProgress();
      } catch (err) {
        result.textContent =
          err instanceof ApiError ? err.body.message : "Something went wrong.";
      }
    })();
  });

  render();
  section.appendChild(bins);
  section.appendChild(submit);
  section.appendChild(result);
  content.appendChild(section);
}

async function reloadChat(): Promise<void> {
  if (!session || !chat) return;
  const { messages } = await api.history(session.userId);
  chat.loadHistory(messages);
  renderChat();
}

function renderChat(): void {
  if (!chat) return;
  const aside = document.getElementById("chat") as HTMLElement;
  aside.innerHTML = "";
  aside.appendChild(el("h3", {}, "Chat with Empa"));
  const log = el("div", { class: "log" });
  for (const bubble of chat.bubbles) {
    log.appendChild(
      el("div", { class: `bubble ${bubble.sender}` }, bubble.content),
    );
  }
  aside.appendChild(log);
  if (chat.banner) aside.appendChild(el("div", { class: "banner" }, chat.banner));
  const input = el("input", { type: "text", placeholder: "Ask Empa…" }) as HTMLInputElement;
  const send = el("button", {}, "Send") as HTMLButtonElement;
  const sync = () => {
    send.disabled = !chat!.canSend(input.value);
  };
  input.addEventListener("input", sync);
  send.addEventListener("click", () => {
    void chat!.send(input.value).then(() => {
      input.value = "";
      renderChat();
    });
    renderChat();
  });
  sync();
  aside.appendChild(input);
  aside.appendChild(send);
  log.scrollTop = log.scrollHeight;
}

void boot();
