"""Text-generation providers behind the gateway contract.

The mock provider makes the full test suite runnable with no network and
no model weights; the HTTP provider adapts a real chat-completion endpoint.
"""

from __future__ import annotations

import threading
from typing import Protocol

import httpx

from .errors import ConfigurationError, UpstreamError

Message = dict[str, str]  # {"role": ..., "content": ...}


class Provider(Protocol):
    def complete(self, messages: list[Message]) -> str:
        """Return the assistant completion for the given role-tagged
        messages. Raises UpstreamError on any failure."""
        ...


class MockProvider:
    """Deterministic in-tree provider with three modes.

    echo   — reply is a fixed function of the last user message
    script — plays a configured reply sequence, then fails
    fail   — always raises UpstreamError
    """

    def __init__(self, mode: str = "echo", script: list[str] | None = None):
        if mode not in ("echo", "script", "fail"):
            raise ConfigurationError(f"unknown mock provider mode: {mode}")
        if mode == "script" and not script:
            raise ConfigurationError("script mode requires a non-empty reply list")
        self.mode = mode
        self._script = list(script or [])
        self._cursor = 0
        self._lock = threading.Lock()

    def complete(self, messages: list[Message]) -> str:
        if self.mode == "fail":
            raise UpstreamError("mock provider configured to fail")
        if self.mode == "script":
            with self._lock:
                if self._cursor >= len(self._script):
                    raise UpstreamError("mock provider script exhausted")
                reply = self._script[self._cursor]
                self._cursor += 1
            return reply
        last_user = next(
            (m["content"] for m in reversed(messages) if m["role"] == "user"), ""
        )
        return f"Thanks for sharing. You said: {last_user}"


def _extract(body: object, path: str) -> str:
    """Walk a dotted path through dicts and lists, e.g.
    "choices.0.message.content"."""
    node = body
    for part in path.split("."):
        if isinstance(node, list):
            node = node[int(part)]
        elif isinstance(node, dict):
            node = node[part]
        else:
            raise KeyError(part)
    if not isinstance(node, str):
        raise KeyError(path)
    return node


class HttpProvider:
    """Chat-completion endpoint adapter: bearer-token POST of
    {model, messages}, assistant content extracted at ``content_path``.

    Oversized contexts are trimmed by dropping the oldest user/assistant
    pairs; the system entry is never dropped.
    """

    DEFAULT_CONTENT_PATH = "choices.0.message.content"

    def __init__(
        self,
        url: str,
        api_key: str,
        model: str,
        timeout_secs: float = 30.0,
        content_path: str = DEFAULT_CONTENT_PATH,
        token_budget: int = 4096,
        transport: httpx.BaseTransport | None = None,
    ):
        self.url = url
        self.model = model
        self.token_budget = token_budget
        self.content_path = content_path
        self._client = httpx.Client(
            headers={"Authorization": f"Bearer {api_key}"},
            timeout=timeout_secs,
            transport=transport,
        )

    @staticmethod
    def _approx_tokens(messages: list[Message]) -> int:
        # coarse heuristic: ~4 characters per token
        return sum(len(m["content"]) for m in messages) // 4

    def _fit_to_budget(self, messages: list[Message]) -> list[Message]:
        trimmed = list(messages)
        # drop oldest pair after the system entry until under budget; always
        # keep system, plus the final user message
        while self._approx_tokens(trimmed) > self.token_budget and len(trimmed) > 2:
            del trimmed[1 : min(3, len(trimmed) - 1)]
        return trimmed

    def complete(self, messages: list[Message]) -> str:
        payload = {"model": self.model, "messages": self._fit_to_budget(messages)}
        try:
            response = self._client.post(self.url, json=payload)
            response.raise_for_status()
            return _extract(response.json(), self.content_path)
        except (httpx.HTTPError, ValueError, KeyError, IndexError) as exc:
            raise UpstreamError(f"provider request failed: {exc}") from exc

    def close(self) -> None:
        self._client.close()
