"""Six-module curriculum: content definitions, sequential unlocking,
and drag-and-drop quiz scoring."""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import datetime
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Optional

from .domain import ModuleId, MODULE_ORDER
from .errors import ConfigurationError, ValidationError
from .storage.base import CompletionRecord


class CompletionRule(str, Enum):
    REFLECTION_SUBMITTED = "reflection_submitted"
    QUIZ_PASSED = "quiz_passed"
    BOTH = "both"
    VIEW_ONLY = "view_only"


@dataclass(frozen=True)
class QuizDefinition:
    quiz_id: str
    categories: tuple[str, ...]
    items: tuple[tuple[str, str], ...]  # (character_id, character_label)
    answer_key: dict[str, str]

    def __post_init__(self):
        ids = [cid for cid, _ in self.items]
        if len(set(ids)) != len(ids):
            raise ConfigurationError(f"quiz {self.quiz_id}: duplicate character ids")
        if set(self.answer_key) != set(ids):
            missing = set(ids) ^ set(self.answer_key)
            raise ConfigurationError(
                f"quiz {self.quiz_id}: answer key does not cover characters "
                f"{sorted(missing)}"
            )
        for cid, category in self.answer_key.items():
            if category not in self.categories:
                raise ConfigurationError(
                    f"quiz {self.quiz_id}: character {cid!r} keyed to unknown "
                    f"category {category!r}"
                )

    def to_json(self) -> dict:
        return {
            "quiz_id": self.quiz_id,
            "categories": list(self.categories),
            "items": [{"character_id": c, "label": l} for c, l in self.items],
        }


@dataclass(frozen=True)
class QuizAttempt:
    quiz_id: str
    assignments: dict[str, str]
    submitted_at: Optional[datetime] = None


@dataclass(frozen=True)
class QuizResult:
    correct_count: int
    total: int
    score: float
    passed: bool

    def to_json(self) -> dict:
        return {
            "correct_count": self.correct_count,
            "total": self.total,
            "score": self.score,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class ModuleDefinition:
    id: ModuleId
    title: str
    media_refs: tuple[str, ...]
    reflection_prompts: tuple[str, ...]
    completion_rule: CompletionRule
    quiz: Optional[QuizDefinition] = None

    def __post_init__(self):
        needs_quiz = self.completion_rule in (
            CompletionRule.QUIZ_PASSED,
            CompletionRule.BOTH,
        )
        if needs_quiz and self.quiz is None:
            raise ConfigurationError(
                f"module {self.id.value}: completion rule requires a quiz"
            )
        if not needs_quiz and self.quiz is not None:
            raise ConfigurationError(
                f"module {self.id.value}: quiz present but rule never uses it"
            )

    def to_json(self) -> dict:
        return {
            "id": self.id.value,
            "title": self.title,
            "media": list(self.media_refs),
            "prompts": list(self.reflection_prompts),
            "completion_rule": self.completion_rule.value,
            "quiz": self.quiz.to_json() if self.quiz else None,
        }


def _parse_module(entry: dict, index: int) -> ModuleDefinition:
    where = f"modules[{index}]"
    try:
        module_id = ModuleId(entry["id"])
    except (KeyError, ValueError):
        raise ConfigurationError(f"{where}: missing or unknown module id") from None
    quiz = None
    if entry.get("quiz") is not None:
        q = entry["quiz"]
        try:
            quiz = QuizDefinition(
                quiz_id=q["quiz_id"],
                categories=tuple(q["categories"]),
                items=tuple((i["character_id"], i["label"]) for i in q["items"]),
                answer_key=dict(q["answer_key"]),
            )
        except KeyError as exc:
            raise ConfigurationError(f"{where}.quiz: missing key {exc}") from None
    try:
        return ModuleDefinition(
            id=module_id,
            title=entry["title"],
            media_refs=tuple(entry.get("media", [])),
            reflection_prompts=tuple(entry.get("prompts", [])),
            completion_rule=CompletionRule(entry["completion_rule"]),
            quiz=quiz,
        )
    except KeyError as exc:
        raise ConfigurationError(f"{where}: missing key {exc}") from None
    except ValueError as exc:
        raise ConfigurationError(f"{where}: {exc}") from None


def load_curriculum(source: str | Path | dict) -> list[ModuleDefinition]:
    """Parse and validate a curriculum document (path, JSON text, or an
    already-parsed dict). Exactly six modules in canonical order."""
    if isinstance(source, dict):
        document = source
    else:
        text = str(source)
        if isinstance(source, Path) or not text.lstrip().startswith("{"):
            try:
                text = Path(text).read_text()
            except OSError as exc:
                raise ConfigurationError(f"cannot read curriculum: {exc}") from exc
        try:
            document = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"curriculum document is not JSON: {exc}")
    entries = document.get("modules")
    if not isinstance(entries, list):
        raise ConfigurationError("curriculum document lacks a modules list")
    modules = [_parse_module(e, i) for i, e in enumerate(entries)]
    ids = [m.id for m in modules]
    if len(set(ids)) != len(ids):
        raise ConfigurationError("duplicate module ids in curriculum")
    if ids != list(MODULE_ORDER):
        raise ConfigurationError(
            f"curriculum must define all six modules in order; got "
            f"{[m.value for m in ids]}"
        )
    return modules


def load_default_curriculum() -> list[ModuleDefinition]:
    text = resources.files("empa.data").joinpath("curriculum.json").read_text()
    return load_curriculum(json.loads(text))


def unlocked_modules(
    progress: dict[ModuleId, CompletionRecord],
) -> set[ModuleId]:
    """Module k is unlocked iff every earlier module is completed; always a
    prefix of the order plus the next module, so module 1 is always open."""
    unlocked: set[ModuleId] = set()
    for module in MODULE_ORDER:
        unlocked.add(module)
        if not progress[module].completed:
            break
    return unlocked


def score_quiz(definition: QuizDefinition, attempt: QuizAttempt) -> QuizResult:
    if attempt.quiz_id != definition.quiz_id:
        raise ValidationError(
            f"attempt is for quiz {attempt.quiz_id!r}, expected "
            f"{definition.quiz_id!r}",
            field="quiz_id",
        )
    expected = set(definition.answer_key)
    got = set(attempt.assignments)
    if got != expected:
        raise ValidationError(
            f"attempt must assign every character exactly once; "
            f"missing={sorted(expected - got)} extra={sorted(got - expected)}",
            field="assignments",
        )
    correct = sum(
        1 for c, category in attempt.assignments.items()
        if definition.answer_key[c] == category
    )
    total = len(definition.answer_key)
    score = correct / total
    return QuizResult(
        correct_count=correct, total=total, score=score, passed=score == 1.0
    )


@dataclass(frozen=True)
class UserModuleState:
    """Per-user inputs to a module's completion rule."""

    reflection_count: int = 0
    latest_quiz_passed: bool = False
    acknowledged: bool = False


def evaluate_completion(module: ModuleDefinition, state: UserModuleState) -> bool:
    rule = module.completion_rule
    if rule is CompletionRule.REFLECTION_SUBMITTED:
        return state.reflection_count >= 1
    if rule is CompletionRule.QUIZ_PASSED:
        return state.latest_quiz_passed
    if rule is CompletionRule.BOTH:
        return state.reflection_count >= 1 and state.latest_quiz_passed
    return state.acknowledged
