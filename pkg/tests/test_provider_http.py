"""HTTP provider adapter against recorded transports (no network)."""

from __future__ import annotations

import json

import httpx
import pytest

from empa.errors import UpstreamError
from empa.providers import HttpProvider

FIXTURE_BODY = {
    "id": "cmpl-1",
    "choices": [
        {"index": 0, "message": {"role": "assistant", "content": "Recorded reply."}}
    ],
}


def make_provider(handler, **kwargs) -> HttpProvider:
    return HttpProvider(
        url="https://llm.example.edu/v1/chat/completions",
        api_key="sk-test",
        model="empa-3b",
        transport=httpx.MockTransport(handler),
        **kwargs,
    )


class TestHttpProvider:
    def test_parses_fixture_content(self):
        seen = {}

        def handler(request: httpx.Request) -> httpx.Response:
            seen["auth"] = request.headers.get("authorization")
            seen["body"] = json.loads(request.content)
            return httpx.Response(200, json=FIXTURE_BODY)

        provider = make_provider(handler)
        messages = [
            {"role": "system", "content": "persona"},
            {"role": "user", "content": "hi"},
        ]
        assert provider.complete(messages) == "Recorded reply."
        assert seen["auth"] == "Bearer sk-test"
        assert seen["body"] == {"model": "empa-3b", "messages": messages}

    def test_http_error_maps_to_upstream(self):
        provider = make_provider(lambda req: httpx.Response(500, text="boom"))
        with pytest.raises(UpstreamError):
            provider.complete([{"role": "system", "content": "s"},
                               {"role": "user", "content": "u"}])

    def test_unparsable_body_maps_to_upstream(self):
        provider = make_provider(lambda req: httpx.Response(200, text="not json"))
        with pytest.raises(UpstreamError):
            provider.complete([{"role": "user", "content": "u"}])

    def test_missing_content_path_maps_to_upstream(self):
        provider = make_provider(lambda req: httpx.Response(200, json={"choices": []}))
        with pytest.raises(UpstreamError):
            provider.complete([{"role": "user", "content": "u"}])

    def test_timeout_maps_to_upstream(self):
        def handler(request):
            raise httpx.ConnectTimeout("timed out")

        provider = make_provider(handler)
        with pytest.raises(UpstreamError):
            provider.complete([{"role": "user", "content": "u"}])

    def test_custom_content_path(self):
        provider = make_provider(
            lambda req: httpx.Response(200, json={"output": {"text": "alt"}}),
            content_path="output.text",
        )
        assert provider.complete([{"role": "user", "content": "u"}]) == "alt"


class TestTokenBudget:
    def test_oldest_pairs_dropped_system_kept(self):
        seen = {}

        def handler(request: httpx.Request) -> httpx.Response:
            seen["messages"] = json.loads(request.content)["messages"]
            return httpx.Response(200, json=FIXTURE_BODY)

        provider = make_provider(handler, token_budget=50)
        long = "x" * 80  # ~20 tokens per message
        messages = [{"role": "system", "content": "persona"}]
        for i in range(4):
            messages.append({"role": "assistant" if i % 2 else "user", "content": long})
        messages.append({"role": "user", "content": "final question"})
        provider.complete(messages)
        sent = seen["messages"]
        assert sent[0] == {"role": "system", "content": "persona"}
        assert sent[-1] == {"role": "user", "content": "final question"}
        assert len(sent) < len(messages)

    def test_under_budget_untouched(self):
        seen = {}

        def handler(request: httpx.Request) -> httpx.Response:
            seen["messages"] = json.loads(request.content)["messages"]
            return httpx.Response(200, json=FIXTURE_BODY)

        provider = make_provider(handler)
        messages = [
            {"role": "system", "content": "persona"},
            {"role": "user", "content": "hi"},
        ]
        provider.complete(messages)
        assert seen["messages"] == messages
