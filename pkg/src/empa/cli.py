"""`empa-server` entry point: read config from the environment and serve."""

from __future__ import annotations

import argparse
import sys

import uvicorn

from .api import configure_logging, create_app
from .config import ServiceConfig
from .errors import ConfigurationError


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="empa-server",
        description="Run the Empa mentoring backend (configured via env vars: "
        "ALLOWED_ORIGINS, DATABASE_URL, LLM_PROVIDER or LLM_API_URL/"
        "LLM_API_KEY/LLM_MODEL, and optionally BIND_ADDR, LLM_TIMEOUT_SECS, "
        "PERSONA_PATH, CURRICULUM_PATH, FEEDBACK_MAX_WORDS).",
    )
    parser.parse_args(argv)
    try:
        config = ServiceConfig.from_env()
        configure_logging()
        app = create_app(config)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    host, _, port = config.bind_addr.rpartition(":")
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port))
    return 0


if __name__ == "__main__":
    sys.exit(main())
