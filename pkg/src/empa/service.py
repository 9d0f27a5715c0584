"""Application core wiring storage, gateway, and curriculum together.

Stateless: every method derives everything it needs from the request and
the store, so any replica over the same store answers identically.
"""

from __future__ import annotations

from .curriculum import (
    ModuleDefinition,
    QuizAttempt,
    QuizResult,
    UserModuleState,
    evaluate_completion,
    score_quiz,
    unlocked_modules,
)
from .domain import (
    ChatMessage,
    ModuleId,
    Sender,
    UserProfile,
    new_message_id,
    new_user_id,
    utcnow,
)
from .errors import ForbiddenError, NotFoundError, ValidationError
from .gateway import (
    FeedbackWindow,
    PersonaPrompt,
    assemble_context,
    build_system_prompt,
    enforce_window,
    generate,
    render_greeting,
)
from .providers import Provider
from .storage import Store

MAX_MESSAGE_CHARS = 4000

REGISTRATION_FIELDS = (
    "name",
    "email",
    "year_of_study",
    "gender",
    "major",
    "instructor",
    "course",
)


class EmpaService:
    def __init__(
        self,
        store: Store,
        provider: Provider,
        curriculum: list[ModuleDefinition],
        persona: PersonaPrompt | None = None,
        window: FeedbackWindow | None = None,
    ):
        self.store = store
        self.provider = provider
        self.curriculum = {m.id: m for m in curriculum}
        self.persona = persona or PersonaPrompt()
        self.window = window or FeedbackWindow()

    # -- onboarding -----------------------------------------------------

    def register(self, fields: dict[str, str]) -> tuple[UserProfile, ChatMessage]:
        """Create the user and persist the templated greeting as seq 1."""
        for name in REGISTRATION_FIELDS:
            value = fields.get(name)
            if value is None or not str(value).strip():
                raise ValidationError(f"missing or empty field: {name}", field=name)
        profile = UserProfile(
            user_id=new_user_id(),
            **{name: str(fields[name]).strip() for name in REGISTRATION_FIELDS},
        )
        self.store.create_user(profile)
        greeting = ChatMessage(
            message_id=new_message_id(),
            user_id=profile.user_id,
            sender=Sender.EMPA,
            content=render_greeting(profile),
            timestamp=utcnow(),
            seq=0,
        )
        self.store.append_turn(profile.user_id, [greeting])
        return profile, self.store.get_history(profile.user_id)[-1]

    # -- chat -------------------------------------------------------------

    def chat_turn(self, user_id: str, message: str) -> ChatMessage:
        """Full-context provider turn; the user message and the
        window-capped reply are persisted atomically, or not at all."""
        profile = self.store.get_user(user_id)
        if not message or not message.strip():
            raise ValidationError("message must be non-empty", field="message")
        if len(message) > MAX_MESSAGE_CHARS:
            raise ValidationError(
                f"message exceeds {MAX_MESSAGE_CHARS} characters", field="message"
            )
        history = self.store.get_history(user_id)
        system = build_system_prompt(profile, self.persona, self.window)
        context = assemble_context(system, history, message)
        response = generate(context, self.provider)
        reply_text = enforce_window(response.content, self.window)
        now = utcnow()
        pair = [
            ChatMessage(
                message_id=new_message_id(),
                user_id=user_id,
                sender=Sender.USER,
                content=message,
                timestamp=now,
                seq=0,
            ),
            ChatMessage(
                message_id=new_message_id(),
                user_id=user_id,
                sender=Sender.EMPA,
                content=reply_text,
                timestamp=now,
                seq=0,
            ),
        ]
        self.store.append_turn(user_id, pair)
        return self.store.get_history(user_id)[-1]

    def history(self, user_id: str) -> list[ChatMessage]:
        return self.store.get_history(user_id)

    # -- curriculum -------------------------------------------------------

    def module_definition(self, module_id: str) -> ModuleDefinition:
        try:
            module = ModuleId(module_id)
        except ValueError:
            raise NotFoundError(f"unknown module: {module_id}") from None
        return self.curriculum[module]

    def progress(self, user_id: str) -> list[dict]:
        records = self.store.get_progress(user_id)
        unlocked = unlocked_modules(records)
        return [
            {
                "id": module.value,
                "completed": records[module].completed,
                "unlocked": module in unlocked,
            }
            for module in self.curriculum
        ]

    def _require_unlocked(self, user_id: str, module: ModuleId) -> None:
        records = self.store.get_progress(user_id)
        if module not in unlocked_modules(records):
            raise ForbiddenError(f"module is locked: {module.value}")

    def _module_state(self, user_id: str, module: ModuleId) -> UserModuleState:
        attempt = self.store.get_quiz_attempt(user_id, module)
        return UserModuleState(
            reflection_count=self.store.get_reflection_count(user_id, module),
            latest_quiz_passed=bool(attempt and attempt.score == 1.0),
            acknowledged=self.store.is_acknowledged(user_id, module),
        )

    def _reevaluate(self, user_id: str, definition: ModuleDefinition) -> bool:
        state = self._module_state(user_id, definition.id)
        if evaluate_completion(definition, state):
            self.store.mark_complete(user_id, definition.id)
            return True
        return False

    def submit_reflection(
        self, user_id: str, module_id: str, text: str
    ) -> ChatMessage:
        """Reflections flow through the chat pipeline so the mentor's
        coaching feedback comes back as the reply."""
        definition = self.module_definition(module_id)
        self.store.get_user(user_id)
        self._require_unlocked(user_id, definition.id)
        if not text or not text.strip():
            raise ValidationError("reflection must be non-empty", field="text")
        feedback = self.chat_turn(user_id, text)
        self.store.record_reflection(user_id, definition.id)
        self._reevaluate(user_id, definition)
        return feedback

    def submit_quiz(
        self, user_id: str, module_id: str, attempt: QuizAttempt
    ) -> tuple[QuizResult, int]:
        definition = self.module_definition(module_id)
        self.store.get_user(user_id)
        self._require_unlocked(user_id, definition.id)
        if definition.quiz is None:
            raise NotFoundError(f"module has no quiz: {definition.id.value}")
        result = score_quiz(definition.quiz, attempt)
        record = self.store.record_quiz_attempt(
            user_id, definition.id, result.score
        )
        self._reevaluate(user_id, definition)
        return result, record.attempt_count

    def acknowledge(self, user_id: str, module_id: str) -> list[dict]:
        """Explicit view acknowledgment; completes view-only modules."""
        definition = self.module_definition(module_id)
        self.store.get_user(user_id)
        self._require_unlocked(user_id, definition.id)
        self.store.record_acknowledgment(user_id, definition.id)
        self._reevaluate(user_id, definition)
        return self.progress(user_id)
