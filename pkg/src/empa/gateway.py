"""Context assembly, persona prompt injection, provider invocation, and
the word-budget guard on mentor feedback."""

from __future__ import annotations

import time
from dataclasses import dataclass

from .domain import ChatMessage, Role, SENDER_TO_ROLE, UserProfile
from .errors import ConfigurationError, ValidationError
from .providers import Provider

PERSONA_ADJECTIVES = "friendly, helpful, and knowledgeable"

DEFAULT_PERSONA_TEMPLATE = (
    "You are Empa, a friendly, helpful, and knowledgeable mentor focused on "
    "interpersonal and intercultural collaboration. You are guiding {name}, "
    "who is studying "
    "{major} in the course {course}. Offer warm, concrete coaching that helps "
    "them reflect on communication styles, cultural dimensions, and teamwork. "
    "Keep every reply within {max_words} words."
)

GREETING_TEMPLATE = (
    "Hi {name}, I'm Empa, your guide for this collaboration journey! Together "
    "we'll move through six modules: exploring how different backgrounds shape "
    "perception, getting to know each other, analyzing team interactions, "
    "understanding global competence, practicing empathy as a strategy, and "
    "finally making team collaboration work. Whenever you're ready, start with "
    "the first module and chat with me here anytime."
)


@dataclass(frozen=True)
class ContextEntry:
    role: Role
    content: str

    def __post_init__(self):
        if not self.content:
            raise ValidationError("context entry content must be non-empty")

    def to_json(self) -> dict:
        return {"role": self.role.value, "content": self.content}


@dataclass(frozen=True)
class ConversationContext:
    """The ordered role-tagged message list handed to a provider.

    First entry is the single system entry, the last has role user, and the
    entries in between alternate user/assistant.
    """

    entries: tuple[ContextEntry, ...]

    def __post_init__(self):
        if not self.entries or self.entries[0].role is not Role.SYSTEM:
            raise ValidationError("context must start with a system entry")
        if any(e.role is Role.SYSTEM for e in self.entries[1:]):
            raise ValidationError("context must contain exactly one system entry")
        if self.entries[-1].role is not Role.USER:
            raise ValidationError("context must end with a user entry")
        for prev, cur in zip(self.entries[1:], self.entries[2:]):
            if prev.role == cur.role:
                raise ValidationError("user/assistant roles must alternate")

    def to_messages(self) -> list[dict[str, str]]:
        return [e.to_json() for e in self.entries]


@dataclass(frozen=True)
class PersonaPrompt:
    """System-prompt template with {name}, {major}, {course} placeholders."""

    template: str = DEFAULT_PERSONA_TEMPLATE

    REQUIRED_PLACEHOLDERS = ("{name}", "{major}", "{course}")

    def __post_init__(self):
        for placeholder in self.REQUIRED_PLACEHOLDERS:
            if placeholder not in self.template:
                raise ConfigurationError(
                    f"persona template missing placeholder {placeholder}"
                )
        if PERSONA_ADJECTIVES not in self.template:
            raise ConfigurationError(
                f"persona template must describe Empa as {PERSONA_ADJECTIVES!r}"
            )


@dataclass(frozen=True)
class FeedbackWindow:
    max_words: int = 80

    def __post_init__(self):
        if self.max_words < 1:
            raise ValidationError("max_words must be >= 1")


@dataclass(frozen=True)
class ProviderResponse:
    content: str
    provider_latency: float


def build_system_prompt(
    profile: UserProfile,
    persona: PersonaPrompt,
    window: FeedbackWindow = FeedbackWindow(),
) -> ContextEntry:
    content = persona.template.format(
        name=profile.name,
        major=profile.major,
        course=profile.course,
        max_words=window.max_words,
    )
    return ContextEntry(role=Role.SYSTEM, content=content)


def render_greeting(profile: UserProfile) -> str:
    """Templated first assistant message persisted at registration; no
    provider dependency at signup."""
    return GREETING_TEMPLATE.format(name=profile.name)


def assemble_context(
    system: ContextEntry, history: list[ChatMessage], new_message: str
) -> ConversationContext:
    """[system] ++ history mapped sender->role ++ [user: new_message].

    Pure: never mutates history. Result length is len(history) + 2.
    """
    if system.role is not Role.SYSTEM:
        raise ValidationError("first entry must have role system")
    if not new_message:
        raise ValidationError("new message must be non-empty", field="message")
    entries = [system]
    entries.extend(
        ContextEntry(role=SENDER_TO_ROLE[m.sender], content=m.content)
        for m in history
    )
    entries.append(ContextEntry(role=Role.USER, content=new_message))
    return ConversationContext(entries=tuple(entries))


def count_words(text: str) -> int:
    """Number of maximal non-whitespace runs."""
    return len(text.split())


_TRAILING_QUOTES = "\"')]’”"


def _ends_sentence(word: str) -> bool:
    return word.rstrip(_TRAILING_QUOTES).endswith((".", "!", "?"))


def enforce_window(raw: str, window: FeedbackWindow) -> str:
    """Cap ``raw`` at the word budget.

    Compliant text is returned unchanged. Otherwise truncate at the last
    sentence-ending punctuation within the budget; with no sentence boundary
    in that prefix, hard-truncate and append ".". Idempotent.
    """
    words = raw.split()
    if len(words) <= window.max_words:
        return raw
    prefix = words[: window.max_words]
    for end in range(len(prefix), 0, -1):
        if _ends_sentence(prefix[end - 1]):
            return " ".join(prefix[:end])
    return " ".join(prefix) + "."


def generate(context: ConversationContext, provider: Provider) -> ProviderResponse:
    """Invoke the provider once (no retries); UpstreamError propagates."""
    start = time.monotonic()
    content = provider.complete(context.to_messages())
    latency = time.monotonic() - start
    if not content:
        from .errors import UpstreamError

        raise UpstreamError("provider returned empty content")
    return ProviderResponse(content=content, provider_latency=latency)
