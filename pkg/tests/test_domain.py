import json
import re

import pytest
from hypothesis import given, strategies as st

from empa.domain import (
    ChatMessage,
    CulturalDimension,
    ModuleId,
    MODULE_ORDER,
    Role,
    Sender,
    UserProfile,
    format_timestamp,
    new_user_id,
    parse_timestamp,
    utcnow,
    validate_email,
)
from empa.errors import ValidationError


def reference_email_check(candidate: str) -> bool:
    """Independent restatement of the rule set: non-empty local part, a
    single "@", domain with a dot and non-empty labels, no whitespace."""
    if any(c.isspace() for c in candidate):
        return False
    if candidate.count("@") != 1:
        return False
    local, domain = candidate.split("@")
    if not local:
        return False
    labels = domain.split(".")
    return len(labels) >= 2 and all(labels)


class TestValidateEmail:
    @pytest.mark.parametrize(
        "candidate,expected",
        [
            ("a@b.co", True),
            ("not-an-email", False),
            ("x @y.com", False),
            ("ada.lovelace@cs.example.edu", True),
            ("@example.com", False),
            ("a@b", False),
            ("a@b.", False),
            ("a@.co", False),
            ("a@@b.co", False),
            ("a@b.co\n", False),
            ("", False),
        ],
    )
    def test_cases(self, candidate, expected):
        assert validate_email(candidate) is expected

    @given(st.text(alphabet="ab@. \tx-_", max_size=20))
    def test_matches_reference_checker(self, candidate):
        assert validate_email(candidate) == reference_email_check(candidate)

    def test_pure(self):
        for _ in range(3):
            assert validate_email("a@b.co") is True


class TestNewUserId:
    def test_format(self):
        uid = new_user_id()
        assert re.fullmatch(r"[0-9a-f]{32}", uid)

    def test_two_calls_distinct(self):
        assert new_user_id() != new_user_id()

    def test_100k_calls_distinct(self):
        ids = {new_user_id() for _ in range(100_000)}
        assert len(ids) == 100_000


class TestEnums:
    def test_sender_round_trip(self):
        for sender in Sender:
            assert Sender(json.loads(json.dumps(sender.value))) is sender

    def test_role_round_trip(self):
        for role in Role:
            assert Role(json.loads(json.dumps(role.value))) is role

    def test_module_order(self):
        assert [m.order for m in MODULE_ORDER] == [1, 2, 3, 4, 5, 6]
        assert MODULE_ORDER[0] is ModuleId.EXPLORING_INTERPERSONAL_COLLABORATION
        assert MODULE_ORDER[-1] is ModuleId.MAKING_TEAM_COLLABORATION_WORK

    def test_cultural_dimensions_exactly_four(self):
        assert {d.value for d in CulturalDimension} == {
            "power_distance",
            "communication_style",
            "individualism_vs_collectivism",
            "time_orientation",
        }


class TestProfileValidation:
    def test_empty_name_rejected(self):
        with pytest.raises(ValidationError):
            UserProfile(
                user_id=new_user_id(),
                name="   ",
                email="a@b.co",
                year_of_study="1",
                gender="x",
                major="CS",
                instructor="T",
                course="C",
            )

    def test_bad_email_rejected(self):
        with pytest.raises(ValidationError):
            UserProfile(
                user_id=new_user_id(),
                name="Ada",
                email="nope",
                year_of_study="1",
                gender="x",
                major="CS",
                instructor="T",
                course="C",
            )


class TestSerialization:
    def test_message_json_snake_case_and_lowercase_enum(self):
        msg = ChatMessage(
            message_id="m1",
            user_id="u1",
            sender=Sender.EMPA,
            content="hi",
            timestamp=utcnow(),
            seq=1,
        )
        data = msg.to_json()
        assert data["sender"] == "empa"
        assert set(data) == {
            "message_id",
            "user_id",
            "sender",
            "content",
            "timestamp",
            "seq",
        }

    def test_timestamp_wire_format_millis(self):
        ts = utcnow()
        wire = format_timestamp(ts)
        # ISO-8601 UTC with millisecond precision
        assert re.fullmatch(r"\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}\.\d{3}\+00:00", wire)
        assert abs((parse_timestamp(wire) - ts).total_seconds()) < 0.001

    def test_empty_content_rejected(self):
        with pytest.raises(ValidationError):
            ChatMessage(
                message_id="m1",
                user_id="u1",
                sender=Sender.USER,
                content="",
                timestamp=utcnow(),
                seq=1,
            )
