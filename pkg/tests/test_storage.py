"""Storage contract tests, run against both store implementations."""

from __future__ import annotations

import pytest

from empa.domain import (
    ChatMessage,
    ModuleId,
    MODULE_ORDER,
    Sender,
    UserProfile,
    new_message_id,
    new_user_id,
    utcnow,
)
from empa.errors import ConflictError, NotFoundError, ValidationError
from empa.storage import InMemoryStore, SqlStore
from empa.storage.memory import InMemoryStore as _Mem


def make_profile(email="ada@example.edu", name="Ada") -> UserProfile:
    return UserProfile(
        user_id=new_user_id(),
        name=name,
        email=email,
        year_of_study="2",
        gender="female",
        major="CS",
        instructor="Dr. Hopper",
        course="HPC 101",
    )


def make_message(user_id: str, sender=Sender.USER, content="hello") -> ChatMessage:
    return ChatMessage(
        message_id=new_message_id(),
        user_id=user_id,
        sender=sender,
        content=content,
        timestamp=utcnow(),
        seq=0,
    )


class TestUsers:
    def test_create_and_lookup(self, store):
        profile = make_profile()
        stored = store.create_user(profile)
        assert stored == profile
        assert store.get_user(profile.user_id) == profile
        assert store.get_user_by_email(profile.email) == profile

    def test_duplicate_email_conflicts(self, store):
        store.create_user(make_profile())
        with pytest.raises(ConflictError):
            store.create_user(make_profile())

    def test_unknown_user_not_found(self, store):
        with pytest.raises(NotFoundError):
            store.get_user("nope")
        assert store.get_user_by_email("no@one.org") is None


class TestHistory:
    def test_append_assigns_consecutive_seqs(self, store):
        profile = store.create_user(make_profile())
        uid = profile.user_id
        assert store.append_turn(uid, [make_message(uid, Sender.EMPA, "welcome")]) == [1]
        seqs = store.append_turn(
            uid,
            [make_message(uid, Sender.USER), make_message(uid, Sender.EMPA, "reply")],
        )
        assert seqs == [2, 3]
        history = store.get_history(uid)
        assert [m.seq for m in history] == [1, 2, 3]
        assert [m.sender for m in history] == [Sender.EMPA, Sender.USER, Sender.EMPA]

    def test_empty_turn_rejected(self, store):
        profile = store.create_user(make_profile())
        with pytest.raises(ValidationError):
            store.append_turn(profile.user_id, [])

    def test_wrong_user_in_pair_rejected(self, store):
        profile = store.create_user(make_profile())
        with pytest.raises(ValidationError):
            store.append_turn(profile.user_id, [make_message("other")])

    def test_unknown_user_not_found(self, store):
        with pytest.raises(NotFoundError):
            store.append_turn("nope", [make_message("nope")])
        with pytest.raises(NotFoundError):
            store.get_history("nope")

    def test_empty_history_distinct_from_unknown(self, store):
        profile = store.create_user(make_profile())
        assert store.get_history(profile.user_id) == []

    def test_ordering_consistent_with_timestamps(self, store):
        profile = store.create_user(make_profile())
        uid = profile.user_id
        for i in range(5):
            store.append_turn(uid, [make_message(uid, content=f"m{i}")])
        history = store.get_history(uid)
        assert sorted(history, key=lambda m: (m.timestamp, m.seq)) == history


class TestAtomicity:
    def test_fault_mid_pair_persists_nothing(self, memory_store):
        profile = memory_store.create_user(make_profile())
        uid = profile.user_id
        memory_store.append_turn(uid, [make_message(uid, Sender.EMPA, "welcome")])

        def explode(user_id, new_history):
            raise RuntimeError("disk full")

        original = memory_store._commit_messages
        memory_store._commit_messages = explode
        try:
            with pytest.raises(RuntimeError):
                memory_store.append_turn(
                    uid,
                    [make_message(uid, Sender.USER), make_message(uid, Sender.EMPA, "r")],
                )
        finally:
            memory_store._commit_messages = original
        assert [m.seq for m in memory_store.get_history(uid)] == [1]

    def test_sql_fault_mid_pair_persists_nothing(self, tmp_path, monkeypatch):
        store = SqlStore(f"sqlite:///{tmp_path}/fault.db")
        profile = store.create_user(make_profile())
        uid = profile.user_id
        store.append_turn(uid, [make_message(uid, Sender.EMPA, "welcome")])

        # second insert of the pair fails -> transaction rolls back
        bad = make_message(uid, Sender.EMPA, "r")
        object.__setattr__(bad, "message_id", None)
        from empa.errors import StorageError

        with pytest.raises(StorageError):
            store.append_turn(uid, [make_message(uid, Sender.USER), bad])
        assert [m.seq for m in store.get_history(uid)] == [1]
        store.close()


class TestProgress:
    def test_fresh_user_all_false(self, store):
        profile = store.create_user(make_profile())
        progress = store.get_progress(profile.user_id)
        assert set(progress) == set(MODULE_ORDER)
        assert all(not r.completed for r in progress.values())

    def test_mark_complete_idempotent(self, store):
        profile = store.create_user(make_profile())
        first = store.mark_complete(profile.user_id, ModuleId.MEET_YOUR_GUIDE_EMPA)
        assert first.completed and first.completed_at is not None
        second = store.mark_complete(profile.user_id, ModuleId.MEET_YOUR_GUIDE_EMPA)
        assert second == first

    def test_complete_all_six(self, store):
        profile = store.create_user(make_profile())
        for module in MODULE_ORDER:
            store.mark_complete(profile.user_id, module)
        progress = store.get_progress(profile.user_id)
        assert all(r.completed for r in progress.values())

    def test_unknown_user(self, store):
        with pytest.raises(NotFoundError):
            store.mark_complete("nope", ModuleId.MEET_YOUR_GUIDE_EMPA)
        with pytest.raises(NotFoundError):
            store.get_progress("nope")


class TestQuizAndActivity:
    def test_quiz_attempt_counting(self, store):
        profile = store.create_user(make_profile())
        uid = profile.user_id
        module = ModuleId.UNDERSTANDING_GLOBAL_COMPETENCE
        assert store.get_quiz_attempt(uid, module) is None
        first = store.record_quiz_attempt(uid, module, 0.5)
        assert (first.score, first.attempt_count) == (0.5, 1)
        second = store.record_quiz_attempt(uid, module, 1.0)
        assert (second.score, second.attempt_count) == (1.0, 2)
        read = store.get_quiz_attempt(uid, module)
        assert (read.score, read.attempt_count) == (1.0, 2)

    def test_reflection_counting(self, store):
        profile = store.create_user(make_profile())
        uid = profile.user_id
        module = ModuleId.EXPLORING_INTERPERSONAL_COLLABORATION
        assert store.get_reflection_count(uid, module) == 0
        assert store.record_reflection(uid, module) == 1
        assert store.record_reflection(uid, module) == 2
        assert store.get_reflection_count(uid, module) == 2

    def test_acknowledgment(self, store):
        profile = store.create_user(make_profile())
        uid = profile.user_id
        module = ModuleId.MEET_YOUR_GUIDE_EMPA
        assert store.is_acknowledged(uid, module) is False
        store.record_acknowledgment(uid, module)
        assert store.is_acknowledged(uid, module) is True


class TestDurability:
    def reopen(self, tmp_path, build):
        url = f"sqlite:///{tmp_path}/durable.db"
        store = SqlStore(url)
        state = build(store)
        store.close()
        return SqlStore(url), state

    def test_user_survives_reopen(self, tmp_path):
        profile = make_profile()
        store, _ = self.reopen(tmp_path, lambda s: s.create_user(profile))
        assert store.get_user(profile.user_id) == profile
        store.close()

    def test_history_survives_reopen(self, tmp_path):
        profile = make_profile()

        def build(s):
            s.create_user(profile)
            s.append_turn(profile.user_id, [make_message(profile.user_id, Sender.EMPA, "hi")])
            return s.get_history(profile.user_id)

        store, before = self.reopen(tmp_path, build)
        assert store.get_history(profile.user_id) == before
        store.close()

    def test_progress_survives_reopen(self, tmp_path):
        profile = make_profile()

        def build(s):
            s.create_user(profile)
            return s.mark_complete(profile.user_id, ModuleId.MEET_YOUR_GUIDE_EMPA)

        store, before = self.reopen(tmp_path, build)
        after = store.get_progress(profile.user_id)[ModuleId.MEET_YOUR_GUIDE_EMPA]
        assert after == before
        store.close()
