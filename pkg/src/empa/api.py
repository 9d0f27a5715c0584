"""HTTP surface: the three core endpoints plus progress, quiz,
reflection, and acknowledgment plumbing the UI needs."""

from __future__ import annotations

import json
import logging
import sys
import time

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import errors
from .config import ServiceConfig
from .curriculum import QuizAttempt, load_curriculum, load_default_curriculum
from .gateway import FeedbackWindow, PersonaPrompt
from .providers import HttpProvider, MockProvider, Provider
from .service import EmpaService
from .storage import open_store

MAX_BODY_BYTES = 32 * 1024

logger = logging.getLogger("empa.api")

_STATUS_BY_ERROR: list[tuple[type[Exception], int, str]] = [
    (errors.ValidationError, 422, "validation_error"),
    (errors.NotFoundError, 404, "not_found"),
    (errors.ConflictError, 409, "conflict"),
    (errors.ForbiddenError, 403, "forbidden"),
    (errors.UpstreamError, 502, "upstream_error"),
    (errors.StorageError, 500, "storage_error"),
]


class RegistrationRequest(BaseModel):
    name: str
    email: str
    year_of_study: str
    gender: str
    major: str
    instructor: str
    course: str


class ChatRequest(BaseModel):
    user_id: str
    message: str


class ReflectionRequest(BaseModel):
    user_id: str
    text: str


class QuizAttemptRequest(BaseModel):
    user_id: str
    quiz_id: str
    assignments: dict[str, str]


class AcknowledgeRequest(BaseModel):
    user_id: str


def build_service(config: ServiceConfig) -> EmpaService:
    store = open_store(config.database_url)
    provider = build_provider(config)
    curriculum = (
        load_curriculum(config.curriculum_path)
        if config.curriculum_path
        else load_default_curriculum()
    )
    return EmpaService(
        store=store,
        provider=provider,
        curriculum=curriculum,
        persona=PersonaPrompt(template=config.load_persona_template()),
        window=FeedbackWindow(max_words=config.feedback_max_words),
    )


def build_provider(config: ServiceConfig) -> Provider:
    kind = config.provider_kind
    if kind == "http":
        return HttpProvider(
            url=config.llm_api_url,
            api_key=config.llm_api_key,
            model=config.llm_model,
            timeout_secs=config.llm_timeout_secs,
        )
    if kind == "mock-echo":
        return MockProvider(mode="echo")
    if kind == "mock-fail":
        return MockProvider(mode="fail")
    if kind.startswith("mock-script:"):
        path = kind.split(":", 1)[1]
        with open(path) as fh:
            return MockProvider(mode="script", script=json.load(fh))
    raise errors.ConfigurationError(f"unknown provider kind: {kind}")


def create_app(
    config: ServiceConfig | None = None, service: EmpaService | None = None
) -> FastAPI:
    """App factory. Handlers are stateless: all state lives in the store."""
    if service is None:
        if config is None:
            config = ServiceConfig.from_env()
        service = build_service(config)
    allowed_origins = list(config.allowed_origins) if config else ["*"]

    app = FastAPI(title="empa", docs_url=None, redoc_url=None)
    app.state.service = service

    app.add_middleware(
        CORSMiddleware,
        allow_origins=allowed_origins,
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.middleware("http")
    async def guard_and_log(request: Request, call_next):
        length = request.headers.get("content-length")
        if length and int(length) > MAX_BODY_BYTES:
            return _error_response(400, "body_too_large", "request body too large")
        start = time.monotonic()
        response = await call_next(request)
        latency_ms = (time.monotonic() - start) * 1000.0
        logger.info(
            json.dumps(
                {
                    "method": request.method,
                    "path": request.url.path,
                    "status": response.status_code,
                    "user_id": request.path_params.get("user_id"),
                    "latency_ms": round(latency_ms, 2),
                }
            )
        )
        return response

    @app.exception_handler(errors.EmpaError)
    async def domain_error_handler(request: Request, exc: errors.EmpaError):
        for cls, status, code in _STATUS_BY_ERROR:
            if isinstance(exc, cls):
                body = {"code": code, "message": str(exc)}
                if isinstance(exc, errors.ValidationError) and exc.field:
                    body["field"] = exc.field
                return JSONResponse(status_code=status, content=body)
        return _error_response(500, "internal_error", str(exc))

    @app.exception_handler(RequestValidationError)
    async def request_validation_handler(
        request: Request, exc: RequestValidationError
    ):
        first = exc.errors()[0] if exc.errors() else {}
        if first.get("type") == "json_invalid":
            return _error_response(400, "malformed_json", "request body is not JSON")
        field = ".".join(str(p) for p in first.get("loc", ()) if p != "body")
        return JSONResponse(
            status_code=422,
            content={
                "code": "validation_error",
                "message": f"invalid or missing field: {field or 'body'}",
                "field": field or None,
            },
        )

    @app.post("/api/submit")
    def submit(body: RegistrationRequest):
        profile, greeting = service.register(body.model_dump())
        return {"user_id": profile.user_id, "greeting": greeting.to_json()}

    @app.post("/api/chatbot")
    def chatbot(body: ChatRequest):
        reply = service.chat_turn(body.user_id, body.message)
        return {"reply": reply.to_json()}

    @app.get("/api/chat-history/{user_id}")
    def chat_history(user_id: str):
        return {"messages": [m.to_json() for m in service.history(user_id)]}

    @app.get("/api/progress/{user_id}")
    def progress(user_id: str):
        return {"modules": service.progress(user_id)}

    @app.get("/api/curriculum")
    def curriculum():
        # answer keys stay server-side so quizzes are not spoofable
        return {"modules": [m.to_json() for m in service.curriculum.values()]}

    @app.post("/api/quiz/{module_id}")
    def quiz(module_id: str, body: QuizAttemptRequest):
        result, attempt_count = service.submit_quiz(
            body.user_id,
            module_id,
            QuizAttempt(quiz_id=body.quiz_id, assignments=body.assignments),
        )
        payload = result.to_json()
        payload["attempt_count"] = attempt_count
        return payload

    @app.post("/api/reflection/{module_id}")
    def reflection(module_id: str, body: ReflectionRequest):
        feedback = service.submit_reflection(body.user_id, module_id, body.text)
        return {"feedback": feedback.to_json()}

    @app.post("/api/acknowledge/{module_id}")
    def acknowledge(module_id: str, body: AcknowledgeRequest):
        return {"modules": service.acknowledge(body.user_id, module_id)}

    return app


def _error_response(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"code": code, "message": message})


def configure_logging() -> None:
    handler = logging.StreamHandler(sys.stdout)
    handler.setFormatter(logging.Formatter("%(message)s"))
    logger.addHandler(handler)
    logger.setLevel(logging.INFO)
