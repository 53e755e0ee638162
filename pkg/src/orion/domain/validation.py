"""Requirement validation and SST mapping.

validate_requirements is verdict-returning (never raises) so the gateway
can turn violations into clarification prompts.
"""

from __future__ import annotations

from orion.domain.types import SliceRequirements, SliceType


def validate_requirements(req: SliceRequirements) -> list[str]:
    """Check all *stated* fields against the domain invariants.

    Returns an empty list when valid, else one "<field> <rule>" line per
    violation.  Null fields are never violations.
    """
    violations: list[str] = []

    def positive_int(name: str) -> None:
        value = getattr(req, name)
        if value is not None and value <= 0:
            violations.append(f"{name} must be positive")

    def positive_number(name: str) -> None:
        value = getattr(req, name)
        if value is not None and value <= 0:
            violations.append(f"{name} must be positive")

    if req.area_of_service is not None and not req.area_of_service.strip():
        violations.append("area_of_service must be a non-empty label")
    for name in (
        "duration_s",
        "device_count",
        "max_dl_thpt_per_device_bps",
        "max_ul_thpt_per_device_bps",
        "max_dl_thpt_per_slice_bps",
        "max_ul_thpt_per_slice_bps",
    ):
        positive_int(name)
    positive_number("dl_delay_budget_ms")
    positive_number("ul_delay_budget_ms")
    if req.packet_error_rate is not None and not 0 < req.packet_error_rate < 1:
        violations.append("packet_error_rate must be a fraction in (0,1)")
    for name in ("availability_pct", "reliability_pct"):
        value = getattr(req, name)
        if value is not None and not 0 < value <= 100:
            violations.append(f"{name} must be within (0,100]")

    if (
        req.max_dl_thpt_per_slice_bps is not None
        and req.max_dl_thpt_per_device_bps is not None
        and req.max_dl_thpt_per_slice_bps < req.max_dl_thpt_per_device_bps
    ):
        violations.append(
            "max_dl_thpt_per_slice_bps must be at least the per-device value"
        )
    if (
        req.max_ul_thpt_per_slice_bps is not None
        and req.max_ul_thpt_per_device_bps is not None
        and req.max_ul_thpt_per_slice_bps < req.max_ul_thpt_per_device_bps
    ):
        violations.append(
            "max_ul_thpt_per_slice_bps must be at least the per-device value"
        )
    return violations


# Standardised slice/service type values (3GPP TS 23.501): eMBB 1, URLLC 2,
# MIoT/mMTC 3.  The listing1-compat profile reproduces deployments that pin
# sst=1 regardless of traffic class.
_SST_STANDARD = {SliceType.EMBB: 1, SliceType.URLLC: 2, SliceType.MMTC: 3}

SST_PROFILES = ("standard", "listing1-compat")


def sst_for(slice_type: SliceType, profile: str = "standard") -> int:
    if profile == "standard":
        return _SST_STANDARD[slice_type]
    if profile == "listing1-compat":
        return 1
    raise ValueError(f"unknown sst profile {profile!r}")
