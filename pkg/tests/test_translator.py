import pytest

from orion.bridge import create_session_descriptor
from orion.domain import SessionBooking, SliceRequirements, SliceType
from orion.errors import TranslationFailed
from orion.gateway.translator import (
    Conversation,
    DeterministicTranslator,
    LiveModelTranslator,
    TranscriptReplayTranslator,
    TranslatorDecision,
    classify_text,
    extract_requirements,
    load_system_prompt,
)

DESCRIPTORS = [create_session_descriptor()]


def conversation(text, key=None) -> Conversation:
    conv = Conversation(conversation_id="c-1", intent_key=key)
    conv.append("system", load_system_prompt())
    conv.append("operator", text)
    return conv


def booking_for(req: SliceRequirements) -> SessionBooking:
    return SessionBooking("s-1", req, 0.0)


def test_decision_exactly_one_variant():
    with pytest.raises(ValueError):
        TranslatorDecision()
    with pytest.raises(ValueError):
        TranslatorDecision(clarification="q", refusal="r")


def test_urllc_example_trace():
    text = (
        "Provision a URLLC slice in area X with 1 ms latency and "
        "99.999% reliability for 2 hours"
    )
    req = extract_requirements(text)
    assert req.dl_delay_budget_ms == 1.0
    assert req.ul_delay_budget_ms is None  # direction-less delay: downlink only
    assert req.reliability_pct == 99.999
    assert req.area_of_service == "X"
    assert req.duration_s == 7200
    assert classify_text(text, req) is SliceType.URLLC


def test_streaming_example():
    text = "4K media streaming at 400 Mbps"
    req = extract_requirements(text)
    assert req.max_dl_thpt_per_slice_bps == 400_000_000
    assert classify_text(text, req) is SliceType.EMBB


def test_sensor_example():
    text = "smart city sensors, 1 million devices per square km"
    req = extract_requirements(text)
    assert req.device_count == 1_000_000
    assert classify_text(text, req) is SliceType.MMTC


def test_surgery_example():
    text = "remote surgery with a 1 ms delay budget and 5 Mbps downlink"
    assert classify_text(text, extract_requirements(text)) is SliceType.URLLC


def test_no_throughput_mention_stays_null():
    req = extract_requirements("remote surgery with a 1 ms delay budget")
    assert req.max_dl_thpt_per_slice_bps is None
    assert req.max_ul_thpt_per_device_bps is None
    assert req.max_dl_thpt_per_device_bps is None


def test_unit_conversions():
    req = extract_requirements(
        "needs 1.5 Gbps downlink and 200 kbps uplink per device for 45 minutes"
    )
    assert req.max_dl_thpt_per_slice_bps == 1_500_000_000
    assert req.max_ul_thpt_per_device_bps == 200_000
    assert req.duration_s == 2700


def test_propose_builds_null_preserving_call():
    translator = DeterministicTranslator()
    conv = conversation("Cloud gaming at 150 Mbps downlink")
    decision = translator.propose(conv, DESCRIPTORS)
    call = decision.tool_call
    assert call.tool_name == "create_session"
    args = call.arguments
    assert args["maxDlThptPerSliceBps"] == 150_000_000
    # everything unstated is literally null
    nulls = [k for k, v in args.items() if v is None]
    assert len(nulls) == len(args) - 1


def test_propose_clarifies_when_class_unknown():
    translator = DeterministicTranslator()
    decision = translator.propose(
        conversation("Set up a slice for our branch office for 1 hour"), DESCRIPTORS
    )
    assert decision.clarification is not None


def test_classify_uses_whole_conversation():
    translator = DeterministicTranslator()
    conv = conversation("Set up a slice for our branch office for 1 hour")
    conv.append("operator", "It is for 4K media streaming at 200 Mbps")
    req = extract_requirements(conv.operator_text())
    assert translator.classify(conv, booking_for(req)) is SliceType.EMBB


def test_replay_adapter_roundtrip():
    records = {
        "intent-001": {
            "key": "intent-001",
            "propose": {
                "toolCall": {
                    "toolName": "create_session",
                    "arguments": SliceRequirements(duration_s=60).to_json(),
                }
            },
            "classify": "URLLC",
        },
        "intent-002": {"key": "intent-002", "propose": {"refusal": "cannot"}},
    }
    translator = TranscriptReplayTranslator(records)
    conv = conversation("anything", key="intent-001")
    decision = translator.propose(conv, DESCRIPTORS)
    assert decision.tool_call.arguments["durationS"] == 60
    assert translator.classify(conv, booking_for(SliceRequirements())) is SliceType.URLLC

    refused = translator.propose(conversation("x", key="intent-002"), DESCRIPTORS)
    assert refused.refusal == "cannot"

    with pytest.raises(TranslationFailed):
        translator.propose(conversation("x", key="intent-404"), DESCRIPTORS)


def test_replay_adapter_from_file(tmp_path):
    path = tmp_path / "transcript.jsonl"
    path.write_text(
        '{"key": "k1", "propose": {"clarification": "which area?"}}\n'
    )
    translator = TranscriptReplayTranslator.from_file(path)
    decision = translator.propose(conversation("x", key="k1"), DESCRIPTORS)
    assert decision.clarification == "which area?"


def test_live_adapter_with_stub_transport():
    replies = iter(
        [
            {
                "content": '{"tool": "create_session", "arguments": {"durationS": 30}}',
                "usage": {"input_tokens": 100, "output_tokens": 10},
            },
            {"content": "mMTC", "usage": {"input_tokens": 50, "output_tokens": 2}},
        ]
    )
    translator = LiveModelTranslator(transport=lambda messages: next(replies))
    conv = conversation("book a slice")
    decision = translator.propose(conv, DESCRIPTORS)
    assert decision.tool_call.arguments == {"durationS": 30}
    assert translator.classify(conv, booking_for(SliceRequirements())) is SliceType.MMTC
    assert translator.total_usage["input_tokens"] == 150


def test_live_adapter_shims_prompt_as_user_message():
    captured = {}

    def transport(messages):
        captured["messages"] = messages
        return {"content": '{"refusal": "no"}', "usage": {}}

    translator = LiveModelTranslator(transport=transport)
    translator.propose(conversation("hello"), DESCRIPTORS)
    first = captured["messages"][0]
    assert first["role"] == "user"
    assert "fields stay null" in first["content"]


def test_live_adapter_unparseable_reply():
    translator = LiveModelTranslator(
        transport=lambda messages: {"content": "sure thing!", "usage": {}}
    )
    with pytest.raises(TranslationFailed):
        translator.propose(conversation("hello"), DESCRIPTORS)


def test_system_prompt_carries_eight_rules():
    prompt = load_system_prompt()
    for number in range(1, 9):
        assert f"{number}." in prompt
    assert "null" in prompt
