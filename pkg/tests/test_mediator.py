import json

import pytest

from orion.domain import A1Policy, SliceId, SliceSlaObjectives, SliceType
from orion.errors import (
    DuplicatePolicyId,
    IllegalStatusTransition,
    SchemaViolation,
    UnknownPolicy,
)
from orion.mediator import A1Mediator, PolicyState


def make_policy_json(policy_id="p-1"):
    return A1Policy(
        ric_id="ric4",
        policy_id=policy_id,
        service_id="intentSlice",
        slice_id=SliceId(1, "456DEF", "724", "11", 1),
        slice_type=SliceType.MMTC,
        objectives=SliceSlaObjectives(50000, 25000, 300000000, 150000000),
    ).to_json()


class RecordingSubscriber:
    def __init__(self):
        self.pushed = []
        self.deletions = []

    def push(self, policy_json):
        self.pushed.append(policy_json)

    def deleted(self, policytype_id, policy_id, policy_json):
        self.deletions.append((policytype_id, policy_id))


def test_put_pushes_exactly_once_per_subscriber():
    mediator = A1Mediator()
    sub = RecordingSubscriber()
    mediator.subscribe(10002, sub)
    receipt = mediator.put_policy(make_policy_json())
    assert receipt["state"] == "CREATED"
    assert receipt["subscribersNotified"] == 1
    assert len(sub.pushed) == 1


def test_put_without_subscribers_stays_created():
    mediator = A1Mediator()
    mediator.put_policy(make_policy_json())
    assert mediator.get_status("p-1", 10002)["state"] == "CREATED"


def test_duplicate_policy_id():
    mediator = A1Mediator()
    mediator.put_policy(make_policy_json())
    with pytest.raises(DuplicatePolicyId):
        mediator.put_policy(make_policy_json())


def test_unparseable_policy_rejected():
    mediator = A1Mediator()
    with pytest.raises(SchemaViolation):
        mediator.put_policy({"policy_id": "x"})


def test_status_flow_enforced():
    mediator = A1Mediator()
    mediator.put_policy(make_policy_json())
    status = mediator.report_status(
        "p-1", 10002, PolicyState.ENFORCED, timings={"a1_mediator": 1.0}
    )
    assert status.state is PolicyState.ENFORCED
    assert mediator.get_status("p-1", 10002)["timings"] == {"a1_mediator": 1.0}


def test_status_flow_not_enforced_with_detail():
    mediator = A1Mediator()
    mediator.put_policy(make_policy_json())
    mediator.report_status(
        "p-1", 10002, PolicyState.NOT_ENFORCED, detail="capacity exceeded"
    )
    status = mediator.get_status("p-1", 10002)
    assert status["state"] == "NOT_ENFORCED"
    assert status["detail"] == "capacity exceeded"


def test_illegal_status_transitions():
    mediator = A1Mediator()
    mediator.put_policy(make_policy_json())
    mediator.report_status("p-1", 10002, PolicyState.ENFORCED)
    with pytest.raises(IllegalStatusTransition):
        mediator.report_status("p-1", 10002, PolicyState.NOT_ENFORCED)
    with pytest.raises(UnknownPolicy):
        mediator.report_status("ghost", 10002, PolicyState.ENFORCED)


def test_delete_notifies_and_removes():
    mediator = A1Mediator()
    sub = RecordingSubscriber()
    mediator.subscribe(10002, sub)
    mediator.put_policy(make_policy_json())
    status = mediator.delete_policy("p-1", 10002)
    assert status.state is PolicyState.DELETED
    assert sub.deletions == [(10002, "p-1")]
    with pytest.raises(UnknownPolicy):
        mediator.delete_policy("p-1", 10002)
    # the id is free again after deletion
    mediator.put_policy(make_policy_json())


def test_delete_with_no_subscribers_is_silent():
    mediator = A1Mediator()
    mediator.put_policy(make_policy_json())
    assert mediator.delete_policy("p-1", 10002).state is PolicyState.DELETED


def test_wait_for_terminal_status_times_out_and_resolves():
    mediator = A1Mediator()
    mediator.put_policy(make_policy_json())
    assert mediator.wait_for_terminal_status("p-1", 10002, timeout=0.1) is None
    mediator.report_status("p-1", 10002, PolicyState.ENFORCED)
    status = mediator.wait_for_terminal_status("p-1", 10002, timeout=0.1)
    assert status["state"] == "ENFORCED"


def test_journal_lines(tmp_path):
    journal = tmp_path / "journal.jsonl"
    mediator = A1Mediator(journal_path=journal)
    mediator.put_policy(make_policy_json())
    mediator.report_status("p-1", 10002, PolicyState.ENFORCED)
    mediator.delete_policy("p-1", 10002)
    events = [json.loads(line)["event"] for line in journal.read_text().splitlines()]
    assert events == ["put", "status", "delete"]
