import dataclasses

from hypothesis import given, settings
from hypothesis import strategies as st

from orion.domain import SliceRequirements, SliceType, sst_for, validate_requirements


def test_all_null_is_ok():
    assert validate_requirements(SliceRequirements()) == []


def test_negative_delay_named():
    violations = validate_requirements(SliceRequirements(dl_delay_budget_ms=-1))
    assert violations == ["dl_delay_budget_ms must be positive"]


def test_listing1_throughputs_consistent():
    req = SliceRequirements(
        max_dl_thpt_per_device_bps=50_000,
        max_dl_thpt_per_slice_bps=300_000_000,
    )
    assert validate_requirements(req) == []


def test_slice_below_device_throughput_flagged():
    req = SliceRequirements(
        max_dl_thpt_per_device_bps=1_000_000,
        max_dl_thpt_per_slice_bps=500_000,
    )
    assert validate_requirements(req) == [
        "max_dl_thpt_per_slice_bps must be at least the per-device value"
    ]


def test_out_of_range_fractions():
    assert validate_requirements(SliceRequirements(packet_error_rate=1.5))
    assert validate_requirements(SliceRequirements(availability_pct=0))
    assert validate_requirements(SliceRequirements(reliability_pct=101))
    assert validate_requirements(SliceRequirements(reliability_pct=99.999)) == []


any_requirements = st.builds(
    SliceRequirements,
    area_of_service=st.none() | st.just("zone-a"),
    duration_s=st.none() | st.integers(-5, 10**6),
    device_count=st.none() | st.integers(-5, 10**6),
    max_dl_thpt_per_device_bps=st.none() | st.integers(-5, 10**9),
    max_ul_thpt_per_device_bps=st.none() | st.integers(-5, 10**9),
    max_dl_thpt_per_slice_bps=st.none() | st.integers(-5, 10**11),
    max_ul_thpt_per_slice_bps=st.none() | st.integers(-5, 10**11),
    dl_delay_budget_ms=st.none() | st.floats(-10, 100),
    ul_delay_budget_ms=st.none() | st.floats(-10, 100),
    packet_error_rate=st.none() | st.floats(-1, 2),
    availability_pct=st.none() | st.floats(-1, 150),
    reliability_pct=st.none() | st.floats(-1, 150),
)


@given(any_requirements, st.data())
@settings(max_examples=200)
def test_validation_monotone_under_nulling(req, data):
    """If r validates, any copy with fields nulled out validates too."""
    if validate_requirements(req):
        return
    stated = [name for name in SliceRequirements.FIELD_NAMES if getattr(req, name) is not None]
    to_null = data.draw(st.sets(st.sampled_from(stated)) if stated else st.just(set()))
    nulled = dataclasses.replace(req, **{name: None for name in to_null})
    assert validate_requirements(nulled) == []


def test_sst_profiles():
    # standard values transcribed from TS 23.501 (eMBB 1 / URLLC 2 / MIoT 3)
    standard_oracle = {SliceType.EMBB: 1, SliceType.URLLC: 2, SliceType.MMTC: 3}
    for slice_type, sst in standard_oracle.items():
        assert sst_for(slice_type, "standard") == sst
    for slice_type in SliceType:
        assert sst_for(slice_type, "listing1-compat") == 1
