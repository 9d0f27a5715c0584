"""Relational store (SQLite or PostgreSQL via SQLAlchemy core).

Durability comes from committing before returning; append_turn runs in a
single transaction so the pair is all-or-nothing. Per-user threading locks
serialize seq assignment within this process; the UNIQUE(user_id, seq)
constraint backstops races across processes.
"""

from __future__ import annotations

import threading
from typing import Optional

import sqlalchemy as sa
from sqlalchemy.exc import IntegrityError, SQLAlchemyError

from ..domain import (
    ChatMessage,
    ModuleId,
    MODULE_ORDER,
    Sender,
    UserProfile,
    parse_timestamp,
    format_timestamp,
    utcnow,
)
from ..errors import ConflictError, NotFoundError, StorageError, ValidationError
from .base import CompletionRecord, QuizAttemptRecord, Store

_metadata = sa.MetaData()

users = sa.Table(
    "users",
    _metadata,
    sa.Column("user_id", sa.String, primary_key=True),
    sa.Column("name", sa.String, nullable=False),
    sa.Column("email", sa.String, nullable=False, unique=True),
    sa.Column("year_of_study", sa.String, nullable=False),
    sa.Column("gender", sa.String, nullable=False),
    sa.Column("major", sa.String, nullable=False),
    sa.Column("instructor", sa.String, nullable=False),
    sa.Column("course", sa.String, nullable=False),
    sa.Column("created_at", sa.String, nullable=False),
)

chat_history = sa.Table(
    "chat_history",
    _metadata,
    sa.Column("message_id", sa.String, primary_key=True),
    sa.Column("user_id", sa.String, sa.ForeignKey("users.user_id"), nullable=False),
    sa.Column("sender", sa.String, nullable=False),
    sa.Column("content", sa.String, nullable=False),
    sa.Column("timestamp", sa.String, nullable=False),
    sa.Column("seq", sa.Integer, nullable=False),
    sa.UniqueConstraint("user_id", "seq"),
)

module_progress = sa.Table(
    "module_progress",
    _metadata,
    sa.Column("user_id", sa.String, sa.ForeignKey("users.user_id"), primary_key=True),
    sa.Column("module_id", sa.String, primary_key=True),
    sa.Column("completed", sa.Boolean, nullable=False),
    sa.Column("completed_at", sa.String, nullable=True),
)

quiz_attempts = sa.Table(
    "quiz_attempts",
    _metadata,
    sa.Column("user_id", sa.String, sa.ForeignKey("users.user_id"), primary_key=True),
    sa.Column("module_id", sa.String, primary_key=True),
    sa.Column("score", sa.Float, nullable=False),
    sa.Column("attempt_count", sa.Integer, nullable=False),
    sa.Column("updated_at", sa.String, nullable=False),
)

# completion-rule inputs (reflection counts, view acknowledgments); not part
# of the fixed schema above but required to evaluate per-module rules
module_activity = sa.Table(
    "module_activity",
    _metadata,
    sa.Column("user_id", sa.String, sa.ForeignKey("users.user_id"), primary_key=True),
    sa.Column("module_id", sa.String, primary_key=True),
    sa.Column("reflection_count", sa.Integer, nullable=False, default=0),
    sa.Column("acknowledged", sa.Boolean, nullable=False, default=False),
)


class SqlStore(Store):
    def __init__(self, url: str):
        try:
            self._engine = sa.create_engine(url)
            _metadata.create_all(self._engine)
        except SQLAlchemyError as exc:
            raise StorageError(f"cannot open database: {exc}") from exc
        self._global_lock = threading.Lock()
        self._user_locks: dict[str, threading.Lock] = {}

    def close(self) -> None:
        self._engine.dispose()

    def _lock_for(self, user_id: str) -> threading.Lock:
        with self._global_lock:
            return self._user_locks.setdefault(user_id, threading.Lock())

    def _require_user(self, conn: sa.Connection, user_id: str) -> None:
        row = conn.execute(
            sa.select(users.c.user_id).where(users.c.user_id == user_id)
        ).first()
        if row is None:
            raise NotFoundError(f"unknown user: {user_id}")

    # -- users --------------------------------------------------------

    def create_user(self, profile: UserProfile) -> UserProfile:
        try:
            with self._engine.begin() as conn:
                conn.execute(
                    users.insert().values(
                        user_id=profile.user_id,
                        name=profile.name,
                        email=profile.email,
                        year_of_study=profile.year_of_study,
                        gender=profile.gender,
                        major=profile.major,
                        instructor=profile.instructor,
                        course=profile.course,
                        created_at=format_timestamp(profile.created_at),
                    )
                )
        except IntegrityError as exc:
            raise ConflictError(
                f"email or user_id already registered: {profile.email}"
            ) from exc
        except SQLAlchemyError as exc:
            raise StorageError(str(exc)) from exc
        return profile

    @staticmethod
    def _profile_from_row(row: sa.Row) -> UserProfile:
        return UserProfile(
            user_id=row.user_id,
            name=row.name,
            email=row.email,
            year_of_study=row.year_of_study,
            gender=row.gender,
            major=row.major,
            instructor=row.instructor,
            course=row.course,
            created_at=parse_timestamp(row.created_at),
        )

    def get_user(self, user_id: str) -> UserProfile:
        with self._engine.connect() as conn:
            row = conn.execute(
                sa.select(users).where(users.c.user_id == user_id)
            ).first()
        if row is None:
            raise NotFoundError(f"unknown user: {user_id}")
        return self._profile_from_row(row)

    def get_user_by_email(self, email: str) -> Optional[UserProfile]:
        with self._engine.connect() as conn:
            row = conn.execute(
                sa.select(users).where(users.c.email == email)
            ).first()
        return self._profile_from_row(row) if row else None

    # -- chat history -------------------------------------------------

    def append_turn(self, user_id: str, messages: list[ChatMessage]) -> list[int]:
        if not messages:
            raise ValidationError("append_turn requires at least one message")
        if any(m.user_id != user_id for m in messages):
            raise ValidationError("all messages must belong to the same user")
        with self._lock_for(user_id):
            try:
                with self._engine.begin() as conn:
                    self._require_user(conn, user_id)
                    base = conn.execute(
                        sa.select(sa.func.coalesce(sa.func.max(chat_history.c.seq), 0))
                        .where(chat_history.c.user_id == user_id)
                    ).scalar_one()
                    seqs = []
                    for i, m in enumerate(messages):
                        seq = base + i + 1
                        conn.execute(
                            chat_history.insert().values(
                                message_id=m.message_id,
                                user_id=user_id,
                                sender=m.sender.value,
                                content=m.content,
                                timestamp=format_timestamp(utcnow()),
                                seq=seq,
                            )
                        )
                        seqs.append(seq)
                    return seqs
            except NotFoundError:
                raise
            except SQLAlchemyError as exc:
                raise StorageError(str(exc)) from exc

    def get_history(self, user_id: str) -> list[ChatMessage]:
        with self._engine.connect() as conn:
            self._require_user(conn, user_id)
            rows = conn.execute(
                sa.select(chat_history)
                .where(chat_history.c.user_id == user_id)
                .order_by(chat_history.c.seq)
            ).all()
        return [
            ChatMessage(
                message_id=r.message_id,
                user_id=r.user_id,
                sender=Sender(r.sender),
                content=r.content,
                timestamp=parse_timestamp(r.timestamp),
                seq=r.seq,
            )
            for r in rows
        ]

    # -- module progress ----------------------------------------------

    def mark_complete(self, user_id: str, module: ModuleId) -> CompletionRecord:
        with self._lock_for(user_id):
            with self._engine.begin() as conn:
                self._require_user(conn, user_id)
                row = conn.execute(
                    sa.select(module_progress).where(
                        module_progress.c.user_id == user_id,
                        module_progress.c.module_id == module.value,
                    )
                ).first()
                if row and row.completed:
                    return CompletionRecord(
                        completed=True, completed_at=parse_timestamp(row.completed_at)
                    )
                now = utcnow()
                if row:
                    conn.execute(
                        module_progress.update()
                        .where(
                            module_progress.c.user_id == user_id,
                            module_progress.c.module_id == module.value,
                        )
                        .values(completed=True, completed_at=format_timestamp(now))
                    )
                else:
                    conn.execute(
                        module_progress.insert().values(
                            user_id=user_id,
                            module_id=module.value,
                            completed=True,
                            completed_at=format_timestamp(now),
                        )
                    )
                return CompletionRecord(completed=True, completed_at=now)

    def get_progress(self, user_id: str) -> dict[ModuleId, CompletionRecord]:
        with self._engine.connect() as conn:
            self._require_user(conn, user_id)
            rows = conn.execute(
                sa.select(module_progress).where(module_progress.c.user_id == user_id)
            ).all()
        found = {
            ModuleId(r.module_id): CompletionRecord(
                completed=r.completed,
                completed_at=parse_timestamp(r.completed_at)
                if r.completed_at
                else None,
            )
            for r in rows
        }
        return {
            m: found.get(m, CompletionRecord(completed=False)) for m in MODULE_ORDER
        }

    # -- quiz attempts -------------------------------------------------

    def record_quiz_attempt(
        self, user_id: str, module: ModuleId, score: float
    ) -> QuizAttemptRecord:
        with self._lock_for(user_id):
            with self._engine.begin() as conn:
                self._require_user(conn, user_id)
                row = conn.execute(
                    sa.select(quiz_attempts).where(
                        quiz_attempts.c.user_id == user_id,
                        quiz_attempts.c.module_id == module.value,
                    )
                ).first()
                now = utcnow()
                count = (row.attempt_count if row else 0) + 1
                if row:
                    conn.execute(
                        quiz_attempts.update()
                        .where(
                            quiz_attempts.c.user_id == user_id,
                            quiz_attempts.c.module_id == module.value,
                        )
                        .values(
                            score=score,
                            attempt_count=count,
                            updated_at=format_timestamp(now),
                        )
                    )
                else:
                    conn.execute(
                        quiz_attempts.insert().values(
                            user_id=user_id,
                            module_id=module.value,
                            score=score,
                            attempt_count=count,
                            updated_at=format_timestamp(now),
                        )
                    )
                return QuizAttemptRecord(
                    score=score, attempt_count=count, updated_at=now
                )

    def get_quiz_attempt(
        self, user_id: str, module: ModuleId
    ) -> Optional[QuizAttemptRecord]:
        with self._engine.connect() as conn:
            self._require_user(conn, user_id)
            row = conn.execute(
                sa.select(quiz_attempts).where(
                    quiz_attempts.c.user_id == user_id,
                    quiz_attempts.c.module_id == module.value,
                )
            ).first()
        if row is None:
            return None
        return QuizAttemptRecord(
            score=row.score,
            attempt_count=row.attempt_count,
            updated_at=parse_timestamp(row.updated_at),
        )

    # -- module activity ------------------------------------------------

    def _activity_row(self, conn: sa.Connection, user_id: str, module: ModuleId):
        return conn.execute(
            sa.select(module_activity).where(
                module_activity.c.user_id == user_id,
                module_activity.c.module_id == module.value,
            )
        ).first()

    def record_reflection(self, user_id: str, module: ModuleId) -> int:
        with self._lock_for(user_id):
            with self._engine.begin() as conn:
                self._require_user(conn, user_id)
                row = self._activity_row(conn, user_id, module)
                count = (row.reflection_count if row else 0) + 1
                if row:
                    conn.execute(
                        module_activity.update()
                        .where(
                            module_activity.c.user_id == user_id,
                            module_activity.c.module_id == module.value,
                        )
                        .values(reflection_count=count)
                    )
                else:
                    conn.execute(
                        module_activity.insert().values(
                            user_id=user_id,
                            module_id=module.value,
                            reflection_count=count,
                            acknowledged=False,
                        )
                    )
                return count

    def get_reflection_count(self, user_id: str, module: ModuleId) -> int:
        with self._engine.connect() as conn:
            self._require_user(conn, user_id)
            row = self._activity_row(conn, user_id, module)
        return row.reflection_count if row else 0

    def record_acknowledgment(self, user_id: str, module: ModuleId) -> None:
        with self._lock_for(user_id):
            with self._engine.begin() as conn:
                self._require_user(conn, user_id)
                row = self._activity_row(conn, user_id, module)
                if row:
                    conn.execute(
                        module_activity.update()
                        .where(
                            module_activity.c.user_id == user_id,
                            module_activity.c.module_id == module.value,
                        )
                        .values(acknowledged=True)
                    )
                else:
                    conn.execute(
                        module_activity.insert().values(
                            user_id=user_id,
                            module_id=module.value,
                            reflection_count=0,
                            acknowledged=True,
                        )
                    )

    def is_acknowledged(self, user_id: str, module: ModuleId) -> bool:
        with self._engine.connect() as conn:
            self._require_user(conn, user_id)
            row = self._activity_row(conn, user_id, module)
        return bool(row and row.acknowledged)
