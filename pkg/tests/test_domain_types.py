import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orion.domain import (
    A1Policy,
    CellConfig,
    IntentRecord,
    LifecycleState,
    PrbQuota,
    SessionBooking,
    SessionStatus,
    SliceId,
    SliceRequirements,
    SliceSlaObjectives,
    SliceType,
    StageTimings,
    n_prb_for,
)
from orion.jsonutil import camel, canonical_dumps


def test_slice_type_wire_names():
    assert [t.value for t in SliceType] == ["eMBB", "URLLC", "mMTC"]
    assert SliceType.parse("mMTC") is SliceType.MMTC
    with pytest.raises(ValueError):
        SliceType.parse("embb")


def test_camel_conversion():
    assert camel("area_of_service") == "areaOfService"
    assert camel("duration_s") == "durationS"
    assert camel("max_dl_thpt_per_device_bps") == "maxDlThptPerDeviceBps"


def test_requirements_serialize_explicit_nulls():
    req = SliceRequirements(dl_delay_budget_ms=1.0, reliability_pct=99.999)
    data = req.to_json()
    assert data["dlDelayBudgetMs"] == 1.0
    assert data["reliabilityPct"] == 99.999
    assert data["maxDlThptPerSliceBps"] is None
    assert len(data) == len(SliceRequirements.FIELD_NAMES)


def test_requirements_rejects_unknown_field():
    with pytest.raises(ValueError):
        SliceRequirements.from_json({"bandwidth": 5})


def test_requirements_rejects_bad_types():
    with pytest.raises(ValueError):
        SliceRequirements.from_json({"deviceCount": "many"})
    with pytest.raises(ValueError):
        SliceRequirements.from_json({"deviceCount": True})
    with pytest.raises(ValueError):
        SliceRequirements.from_json({"dlDelayBudgetMs": "1ms"})


requirements_strategy = st.builds(
    SliceRequirements,
    area_of_service=st.none() | st.text(min_size=1, max_size=12).filter(str.strip),
    duration_s=st.none() | st.integers(1, 10**7),
    device_count=st.none() | st.integers(1, 10**7),
    max_dl_thpt_per_device_bps=st.none() | st.integers(1, 10**9),
    max_ul_thpt_per_device_bps=st.none() | st.integers(1, 10**9),
    max_dl_thpt_per_slice_bps=st.none() | st.integers(10**9, 10**11),
    max_ul_thpt_per_slice_bps=st.none() | st.integers(10**9, 10**11),
    dl_delay_budget_ms=st.none() | st.floats(0.1, 1000),
    ul_delay_budget_ms=st.none() | st.floats(0.1, 1000),
    packet_error_rate=st.none() | st.floats(1e-9, 0.999),
    availability_pct=st.none() | st.floats(0.1, 100),
    reliability_pct=st.none() | st.floats(0.1, 100),
)


@given(requirements_strategy)
@settings(max_examples=200)
def test_requirements_roundtrip(req):
    assert SliceRequirements.from_json(req.to_json()) == req
    # and through actual JSON text
    assert SliceRequirements.from_json(json.loads(canonical_dumps(req.to_json()))) == req


def listing1_slice_id():
    return SliceId(sst=1, sd="456DEF", plmn_mcc="724", plmn_mnc="11", nci=1)


def test_slice_id_validation():
    with pytest.raises(ValueError):
        SliceId(sst=256, sd="456DEF", plmn_mcc="724", plmn_mnc="11", nci=1)
    with pytest.raises(ValueError):
        SliceId(sst=1, sd="456def", plmn_mcc="724", plmn_mnc="11", nci=1)
    with pytest.raises(ValueError):
        SliceId(sst=1, sd="456DEF", plmn_mcc="72", plmn_mnc="11", nci=1)
    with pytest.raises(ValueError):
        SliceId(sst=1, sd="456DEF", plmn_mcc="724", plmn_mnc="1", nci=1)
    with pytest.raises(ValueError):
        SliceId(sst=1, sd="456DEF", plmn_mcc="724", plmn_mnc="11", nci=2**32)


def test_slice_id_roundtrip():
    sid = listing1_slice_id()
    assert SliceId.from_json(sid.to_json()) == sid
    assert sid.to_json()["plmnId"] == {"mcc": "724", "mnc": "11"}


def test_objectives_listing1_keys_and_omission():
    obj = SliceSlaObjectives(50000, 25000, 300000000, 150000000)
    data = obj.to_json()
    assert data == {
        "maxDlThptPerUe": 50000,
        "maxUlThptPerUe": 25000,
        "maxDlThptPerSlice": 300000000,
        "maxUlThptPerSlice": 150000000,
    }
    assert SliceSlaObjectives.from_json(data) == obj


def test_objectives_consistency_guard():
    with pytest.raises(ValueError):
        SliceSlaObjectives(
            max_dl_thpt_per_ue_bps=100, max_dl_thpt_per_slice_bps=50
        )


def test_policy_roundtrip_and_shape():
    policy = A1Policy(
        ric_id="ric4",
        policy_id="48782",
        service_id="intentSlice",
        slice_id=listing1_slice_id(),
        slice_type=SliceType.MMTC,
        objectives=SliceSlaObjectives(50000, 25000, 300000000, 150000000),
    )
    data = policy.to_json()
    assert data["policytype_id"] == 10002
    assert data["policy_data"]["scope"]["sliceType"] == "mMTC"
    assert A1Policy.from_json(data) == policy


def test_prb_table_lookup():
    # oracle: transcribed directly from TS 38.101-1 Table 5.3.2-1
    assert n_prb_for(100_000_000, 1) == 273
    assert n_prb_for(20_000_000, 0) == 106
    assert n_prb_for(50_000_000, 2) == 65
    with pytest.raises(ValueError):
        n_prb_for(17_000_000, 0)


def test_cell_config_consistency():
    cfg = CellConfig("gnb-sim-1", 100_000_000, 1, 4, 8, 273, 0.14)
    assert CellConfig.from_json(cfg.to_json()) == cfg
    with pytest.raises(ValueError):
        CellConfig("gnb-sim-1", 100_000_000, 1, 4, 8, 270, 0.14)
    with pytest.raises(ValueError):
        CellConfig("gnb-sim-1", 100_000_000, 1, 4, 5, 273, 0.14)
    with pytest.raises(ValueError):
        CellConfig("gnb-sim-1", 100_000_000, 1, 4, 8, 273, 0.6)


def test_prb_quota_invariants():
    sid = listing1_slice_id()
    quota = PrbQuota(slice=sid, node_id="gnb-sim-1", dedicated_pct=30)
    assert quota.min_pct == 0 and quota.max_pct == 100
    assert PrbQuota.from_json(quota.to_json()) == quota
    with pytest.raises(ValueError):
        PrbQuota(slice=sid, node_id="n", dedicated_pct=0)
    with pytest.raises(ValueError):
        PrbQuota(slice=sid, node_id="n", dedicated_pct=50, min_pct=60)


def test_stage_timings_fixed_keys():
    with pytest.raises(ValueError):
        StageTimings({"warmup": 1.0})
    with pytest.raises(ValueError):
        StageTimings({"a1_mediator": -1.0})
    merged = StageTimings({"a1_mediator": 1.0}).merged(
        {"xapp_policy_to_control": 2.0}
    )
    assert merged.durations == {"a1_mediator": 1.0, "xapp_policy_to_control": 2.0}
    assert not merged.complete()


def test_booking_roundtrip():
    booking = SessionBooking(
        session_id="ab" * 16,
        requirements=SliceRequirements(device_count=6000),
        created_at=1723300000.25,
        status=SessionStatus.ACTIVE,
    )
    assert SessionBooking.from_json(booking.to_json()) == booking


def test_intent_record_roundtrip_carries_legal_events():
    record = IntentRecord(
        intent_id="i-1",
        text="Provision a URLLC slice in area X",
        state=LifecycleState.ACTIVATED,
        conversation_id="c-1",
        session_id="s-1",
        policy_id="48782",
        policytype_id=10002,
        slice_type=SliceType.URLLC,
        timings=StageTimings({"a1_mediator": 0.8}),
    )
    data = record.to_json()
    assert sorted(data["legalEvents"]) == ["monitor", "suspend", "terminate"]
    assert IntentRecord.from_json(data) == record
