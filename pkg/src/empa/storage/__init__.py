"""Persistence layer: shared contract plus in-memory and relational stores."""

from .base import CompletionRecord, QuizAttemptRecord, Store
from .memory import InMemoryStore
from .sql import SqlStore


def open_store(url: str) -> Store:
    """Open a store from a connection URL; ``memory://`` selects the
    in-memory store, anything else is a SQLAlchemy database URL."""
    if url == "memory://":
        return InMemoryStore()
    return SqlStore(url)


__all__ = [
    "CompletionRecord",
    "QuizAttemptRecord",
    "Store",
    "InMemoryStore",
    "SqlStore",
    "open_store",
]
