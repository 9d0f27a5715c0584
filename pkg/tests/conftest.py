from __future__ import annotations

import pytest

from empa.curriculum import load_default_curriculum
from empa.gateway import FeedbackWindow, PersonaPrompt
from empa.providers import MockProvider
from empa.service import EmpaService
from empa.storage import InMemoryStore, SqlStore


VALID_REGISTRATION = {
    "name": "Ada Lovelace",
    "email": "ada@example.edu",
    "year_of_study": "2",
    "gender": "female",
    "major": "Computer Science",
    "instructor": "Dr. Hopper",
    "course": "HPC 101",
}


@pytest.fixture(params=["memory", "sqlite"])
def store(request, tmp_path):
    if request.param == "memory":
        yield InMemoryStore()
    else:
        s = SqlStore(f"sqlite:///{tmp_path}/empa.db")
        yield s
        s.close()


@pytest.fixture
def memory_store():
    return InMemoryStore()


def make_service(store=None, provider=None) -> EmpaService:
    return EmpaService(
        store=store or InMemoryStore(),
        provider=provider or MockProvider(mode="echo"),
        curriculum=load_default_curriculum(),
        persona=PersonaPrompt(),
        window=FeedbackWindow(max_words=80),
    )


@pytest.fixture
def service(memory_store):
    return make_service(store=memory_store)


def registration(**overrides) -> dict:
    body = dict(VALID_REGISTRATION)
    body.update(overrides)
    return body
