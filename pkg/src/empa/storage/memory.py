"""In-memory store for tests and local development.

Same contract as the relational store minus durability across processes.
Per-user locks serialize append_turn so seq assignment is race-free.
"""

from __future__ import annotations

import threading
from collections import defaultdict
from dataclasses import replace
from typing import Optional

from ..domain import ChatMessage, ModuleId, MODULE_ORDER, UserProfile, utcnow
from ..errors import ConflictError, NotFoundError, ValidationError
from .base import CompletionRecord, QuizAttemptRecord, Store


class InMemoryStore(Store):
    def __init__(self):
        self._users: dict[str, UserProfile] = {}
        self._by_email: dict[str, str] = {}
        self._histories: dict[str, list[ChatMessage]] = {}
        self._progress: dict[tuple[str, ModuleId], CompletionRecord] = {}
        self._quiz: dict[tuple[str, ModuleId], QuizAttemptRecord] = {}
        self._reflections: dict[tuple[str, ModuleId], int] = defaultdict(int)
        self._acks: set[tuple[str, ModuleId]] = set()
        self._global_lock = threading.Lock()
        self._user_locks: dict[str, threading.Lock] = {}

    def _lock_for(self, user_id: str) -> threading.Lock:
        with self._global_lock:
            return self._user_locks.setdefault(user_id, threading.Lock())

    def _require_user(self, user_id: str) -> None:
        if user_id not in self._users:
            raise NotFoundError(f"unknown user: {user_id}")

    # -- users --------------------------------------------------------

    def create_user(self, profile: UserProfile) -> UserProfile:
        with self._global_lock:
            if profile.user_id in self._users:
                raise ConflictError(f"user_id already exists: {profile.user_id}")
            if profile.email in self._by_email:
                raise ConflictError(f"email already registered: {profile.email}")
            self._users[profile.user_id] = profile
            self._by_email[profile.email] = profile.user_id
            self._histories[profile.user_id] = []
        return profile

    def get_user(self, user_id: str) -> UserProfile:
        self._require_user(user_id)
        return self._users[user_id]

    def get_user_by_email(self, email: str) -> Optional[UserProfile]:
        user_id = self._by_email.get(email)
        return self._users[user_id] if user_id else None

    # -- chat history -------------------------------------------------

    def append_turn(self, user_id: str, messages: list[ChatMessage]) -> list[int]:
        if not messages:
            raise ValidationError("append_turn requires at least one message")
        if any(m.user_id != user_id for m in messages):
            raise ValidationError("all messages must belong to the same user")
        with self._lock_for(user_id):
            self._require_user(user_id)
            history = self._histories[user_id]
            base = len(history)
            assigned = [
                replace(m, seq=base + i + 1, timestamp=utcnow())
                for i, m in enumerate(messages)
            ]
            self._commit_messages(user_id, history + assigned)
            return [m.seq for m in assigned]

    def _commit_messages(self, user_id: str, new_history: list[ChatMessage]) -> None:
        # single-step commit: the all-or-nothing point (tests inject faults here)
        self._histories[user_id] = new_history

    def get_history(self, user_id: str) -> list[ChatMessage]:
        self._require_user(user_id)
        return list(self._histories[user_id])

    # -- module progress ----------------------------------------------

    def mark_complete(self, user_id: str, module: ModuleId) -> CompletionRecord:
        with self._lock_for(user_id):
            self._require_user(user_id)
            existing = self._progress.get((user_id, module))
            if existing and existing.completed:
                return existing
            record = CompletionRecord(completed=True, completed_at=utcnow())
            self._progress[(user_id, module)] = record
            return record

    def get_progress(self, user_id: str) -> dict[ModuleId, CompletionRecord]:
        self._require_user(user_id)
        return {
            m: self._progress.get((user_id, m), CompletionRecord(completed=False))
            for m in MODULE_ORDER
        }

    # -- quiz attempts -------------------------------------------------

    def record_quiz_attempt(
        self, user_id: str, module: ModuleId, score: float
    ) -> QuizAttemptRecord:
        with self._lock_for(user_id):
            self._require_user(user_id)
            prior = self._quiz.get((user_id, module))
            record = QuizAttemptRecord(
                score=score,
                attempt_count=(prior.attempt_count if prior else 0) + 1,
                updated_at=utcnow(),
            )
            self._quiz[(user_id, module)] = record
            return record

    def get_quiz_attempt(
        self, user_id: str, module: ModuleId
    ) -> Optional[QuizAttemptRecord]:
        self._require_user(user_id)
        return self._quiz.get((user_id, module))

    # -- module activity ------------------------------------------------

    def record_reflection(self, user_id: str, module: ModuleId) -> int:
        with self._lock_for(user_id):
            self._require_user(user_id)
            self._reflections[(user_id, module)] += 1
            return self._reflections[(user_id, module)]

    def get_reflection_count(self, user_id: str, module: ModuleId) -> int:
        self._require_user(user_id)
        return self._reflections[(user_id, module)]

    def record_acknowledgment(self, user_id: str, module: ModuleId) -> None:
        self._require_user(user_id)
        self._acks.add((user_id, module))

    def is_acknowledged(self, user_id: str, module: ModuleId) -> bool:
        self._require_user(user_id)
        return (user_id, module) in self._acks
