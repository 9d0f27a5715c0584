"""Environment-variable configuration; startup fails fast on anything
missing rather than degrading."""

from __future__ import annotations

import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import ConfigurationError


@dataclass(frozen=True)
class ServiceConfig:
    bind_addr: str
    allowed_origins: tuple[str, ...]
    database_url: str
    provider_kind: str  # "http", "mock-echo", "mock-fail", "mock-script:<path>"
    llm_api_url: str | None
    llm_api_key: str | None
    llm_model: str | None
    llm_timeout_secs: float
    persona_path: Path | None
    curriculum_path: Path | None
    feedback_max_words: int

    def __post_init__(self):
        if not self.allowed_origins:
            raise ConfigurationError("ALLOWED_ORIGINS must list at least one origin")
        if self.feedback_max_words < 1:
            raise ConfigurationError("FEEDBACK_MAX_WORDS must be >= 1")
        if self.provider_kind == "http":
            for name, value in (
                ("LLM_API_URL", self.llm_api_url),
                ("LLM_API_KEY", self.llm_api_key),
                ("LLM_MODEL", self.llm_model),
            ):
                if not value:
                    raise ConfigurationError(f"missing required env var: {name}")

    @classmethod
    def from_env(cls, env: dict[str, str] | None = None) -> "ServiceConfig":
        env = env if env is not None else dict(os.environ)

        def require(name: str) -> str:
            value = env.get(name, "").strip()
            if not value:
                raise ConfigurationError(f"missing required env var: {name}")
            return value

        origins = tuple(
            o.strip() for o in require("ALLOWED_ORIGINS").split(",") if o.strip()
        )
        return cls(
            bind_addr=env.get("BIND_ADDR", "127.0.0.1:8000"),
            allowed_origins=origins,
            database_url=require("DATABASE_URL"),
            provider_kind=env.get("LLM_PROVIDER", "http"),
            llm_api_url=env.get("LLM_API_URL"),
            llm_api_key=env.get("LLM_API_KEY"),
            llm_model=env.get("LLM_MODEL"),
            llm_timeout_secs=float(env.get("LLM_TIMEOUT_SECS", "30")),
            persona_path=Path(env["PERSONA_PATH"]) if env.get("PERSONA_PATH") else None,
            curriculum_path=Path(env["CURRICULUM_PATH"])
            if env.get("CURRICULUM_PATH")
            else None,
            feedback_max_words=int(env.get("FEEDBACK_MAX_WORDS", "80")),
        )

    def load_persona_template(self) -> str:
        if self.persona_path is not None:
            try:
                return self.persona_path.read_text()
            except OSError as exc:
                raise ConfigurationError(f"cannot read persona: {exc}") from exc
        return resources.files("empa.data").joinpath("persona.txt").read_text()
