"""Storage contract shared by the in-memory and relational stores.

Write operations are durable before they return; append_turn persists its
message list all-or-nothing so a user's history always alternates
user/empa pairs after the greeting.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from datetime import datetime
from typing import Optional

from ..domain import ChatMessage, ModuleId, UserProfile


@dataclass(frozen=True)
class CompletionRecord:
    completed: bool
    completed_at: Optional[datetime] = None

    def to_json(self) -> dict:
        from ..domain import format_timestamp

        return {
            "completed": self.completed,
            "completed_at": format_timestamp(self.completed_at)
            if self.completed_at
            else None,
        }


@dataclass(frozen=True)
class QuizAttemptRecord:
    """Latest score plus attempt count; no per-attempt history kept."""

    score: float
    attempt_count: int
    updated_at: datetime


class Store(ABC):
    """Keyed persistence for users, chat history, progress, quiz attempts,
    and per-module activity (reflection counts, view acknowledgments)."""

    # -- users --------------------------------------------------------

    @abstractmethod
    def create_user(self, profile: UserProfile) -> UserProfile:
        """Persist a new profile. Raises ConflictError on duplicate email
        or user_id."""

    @abstractmethod
    def get_user(self, user_id: str) -> UserProfile:
        """Raises NotFoundError for unknown ids."""

    @abstractmethod
    def get_user_by_email(self, email: str) -> Optional[UserProfile]: ...

    # -- chat history -------------------------------------------------

    @abstractmethod
    def append_turn(self, user_id: str, messages: list[ChatMessage]) -> list[int]:
        """Atomically append ``messages`` with consecutive seq values,
        returning the assigned seqs. The seq and timestamp fields of the
        inputs are ignored; the store assigns both."""

    @abstractmethod
    def get_history(self, user_id: str) -> list[ChatMessage]:
        """All messages for the user in ascending seq order. Raises
        NotFoundError for unknown users (distinct from empty)."""

    # -- module progress ----------------------------------------------

    @abstractmethod
    def mark_complete(self, user_id: str, module: ModuleId) -> CompletionRecord:
        """Idempotent; a second call returns the original record."""

    @abstractmethod
    def get_progress(self, user_id: str) -> dict[ModuleId, CompletionRecord]:
        """All six modules, defaulting to completed=False."""

    # -- quiz attempts -------------------------------------------------

    @abstractmethod
    def record_quiz_attempt(
        self, user_id: str, module: ModuleId, score: float
    ) -> QuizAttemptRecord:
        """Upsert the latest score and bump the attempt count."""

    @abstractmethod
    def get_quiz_attempt(
        self, user_id: str, module: ModuleId
    ) -> Optional[QuizAttemptRecord]: ...

    # -- module activity (completion-rule inputs) ----------------------

    @abstractmethod
    def record_reflection(self, user_id: str, module: ModuleId) -> int:
        """Increment and return the accepted-reflection count."""

    @abstractmethod
    def get_reflection_count(self, user_id: str, module: ModuleId) -> int: ...

    @abstractmethod
    def record_acknowledgment(self, user_id: str, module: ModuleId) -> None:
        """Record an explicit view acknowledgment (view-only modules)."""

    @abstractmethod
    def is_acknowledged(self, user_id: str, module: ModuleId) -> bool: ...

    def close(self) -> None:
        """Release resources; a reopened store sees all committed writes."""
