"""Shared domain types, identifiers, and validation rules."""

from __future__ import annotations

import re
import secrets
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum

from .errors import ValidationError

_EMAIL_RE = re.compile(r"[^\s@]+@[^\s@.]+(\.[^\s@.]+)+")


def validate_email(candidate: str) -> bool:
    """Syntactic email check: non-empty local part, single "@", dotted
    domain with non-empty labels, no whitespace anywhere."""
    return bool(_EMAIL_RE.fullmatch(candidate))


def new_user_id() -> str:
    """128-bit random identifier, lowercase hex. Random rather than
    sequential so user ids on the history endpoint are not enumerable."""
    return secrets.token_hex(16)


def utcnow() -> datetime:
    """Current UTC time at millisecond precision (the wire precision, so
    values round-trip exactly through serialization)."""
    now = datetime.now(timezone.utc)
    return now.replace(microsecond=now.microsecond // 1000 * 1000)


def format_timestamp(ts: datetime) -> str:
    """ISO-8601 UTC with millisecond precision, the wire format."""
    return ts.astimezone(timezone.utc).isoformat(timespec="milliseconds")


def parse_timestamp(raw: str) -> datetime:
    return datetime.fromisoformat(raw)


class Sender(str, Enum):
    """Attribution of a persisted chat message."""

    USER = "user"
    EMPA = "empa"


class Role(str, Enum):
    """Role tag in an assembled provider context."""

    SYSTEM = "system"
    USER = "user"
    ASSISTANT = "assistant"


SENDER_TO_ROLE = {Sender.USER: Role.USER, Sender.EMPA: Role.ASSISTANT}


class ModuleId(str, Enum):
    """The six curriculum modules, declaration order is the unlock order."""

    EXPLORING_INTERPERSONAL_COLLABORATION = "exploring_interpersonal_collaboration"
    MEET_YOUR_GUIDE_EMPA = "meet_your_guide_empa"
    ANALYZING_TEAM_INTERACTIONS = "analyzing_team_interactions"
    UNDERSTANDING_GLOBAL_COMPETENCE = "understanding_global_competence"
    EMPATHY_AS_A_STRATEGY = "empathy_as_a_strategy"
    MAKING_TEAM_COLLABORATION_WORK = "making_team_collaboration_work"

    @property
    def order(self) -> int:
        """1-based position in the unlock sequence."""
        return MODULE_ORDER.index(self) + 1


MODULE_ORDER: tuple[ModuleId, ...] = tuple(ModuleId)


class CulturalDimension(str, Enum):
    POWER_DISTANCE = "power_distance"
    COMMUNICATION_STYLE = "communication_style"
    INDIVIDUALISM_VS_COLLECTIVISM = "individualism_vs_collectivism"
    TIME_ORIENTATION = "time_orientation"


@dataclass(frozen=True)
class UserProfile:
    """Registered learner identity and academic context."""

    user_id: str
    name: str
    email: str
    year_of_study: str
    gender: str
    major: str
    instructor: str
    course: str
    created_at: datetime = field(default_factory=utcnow)

    def __post_init__(self):
        if not self.name.strip():
            raise ValidationError("name must be non-empty", field="name")
        if not validate_email(self.email):
            raise ValidationError(f"invalid email: {self.email!r}", field="email")

    def to_json(self) -> dict:
        return {
            "user_id": self.user_id,
            "name": self.name,
            "email": self.email,
            "year_of_study": self.year_of_study,
            "gender": self.gender,
            "major": self.major,
            "instructor": self.instructor,
            "course": self.course,
            "created_at": format_timestamp(self.created_at),
        }


@dataclass(frozen=True)
class ChatMessage:
    """One persisted utterance. ``seq`` is the authoritative per-user order;
    timestamps are informational (same-millisecond ties are possible)."""

    message_id: str
    user_id: str
    sender: Sender
    content: str
    timestamp: datetime
    seq: int

    def __post_init__(self):
        if not self.content:
            raise ValidationError("message content must be non-empty", field="content")

    def to_json(self) -> dict:
        return {
            "message_id": self.message_id,
            "user_id": self.user_id,
            "sender": self.sender.value,
            "content": self.content,
            "timestamp": format_timestamp(self.timestamp),
            "seq": self.seq,
        }


def new_message_id() -> str:
    return secrets.token_hex(16)
