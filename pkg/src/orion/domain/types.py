"""Shared domain types and their canonical JSON forms.

Every inter-service payload is the JSON produced here (camelCase keys,
explicit nulls for unstated requirement fields).  Types are immutable
values; constructors raise ValueError on structurally invalid input,
while *semantic* checks on requirements live in
:func:`orion.domain.validation.validate_requirements` so callers can turn
violations into clarification prompts instead of exceptions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Mapping, Optional

from orion.domain.lifecycle import LifecycleState


class SliceType(Enum):
    EMBB = "eMBB"
    URLLC = "URLLC"
    MMTC = "mMTC"

    @classmethod
    def parse(cls, text: str) -> "SliceType":
        for member in cls:
            if member.value == text:
                return member
        raise ValueError(f"unknown slice type {text!r}")


_INT_FIELDS = {
    "duration_s",
    "device_count",
    "max_dl_thpt_per_device_bps",
    "max_ul_thpt_per_device_bps",
    "max_dl_thpt_per_slice_bps",
    "max_ul_thpt_per_slice_bps",
}
_FLOAT_FIELDS = {
    "dl_delay_budget_ms",
    "ul_delay_budget_ms",
    "packet_error_rate",
    "availability_pct",
    "reliability_pct",
}


@dataclass(frozen=True)
class SliceRequirements:
    """Structured slice intent, mirroring the NetworkSliceBooking schema.

    Every field is null unless the source intent explicitly stated it.
    """

    area_of_service: Optional[str] = None
    duration_s: Optional[int] = None
    device_count: Optional[int] = None
    max_dl_thpt_per_device_bps: Optional[int] = None
    max_ul_thpt_per_device_bps: Optional[int] = None
    max_dl_thpt_per_slice_bps: Optional[int] = None
    max_ul_thpt_per_slice_bps: Optional[int] = None
    dl_delay_budget_ms: Optional[float] = None
    ul_delay_budget_ms: Optional[float] = None
    packet_error_rate: Optional[float] = None
    availability_pct: Optional[float] = None
    reliability_pct: Optional[float] = None

    FIELD_NAMES = (
        "area_of_service",
        "duration_s",
        "device_count",
        "max_dl_thpt_per_device_bps",
        "max_ul_thpt_per_device_bps",
        "max_dl_thpt_per_slice_bps",
        "max_ul_thpt_per_slice_bps",
        "dl_delay_budget_ms",
        "ul_delay_budget_ms",
        "packet_error_rate",
        "availability_pct",
        "reliability_pct",
    )

    def stated_fields(self) -> dict[str, Any]:
        return {
            name: getattr(self, name)
            for name in self.FIELD_NAMES
            if getattr(self, name) is not None
        }

    def to_json(self) -> dict[str, Any]:
        from orion.jsonutil import camel

        return {camel(name): getattr(self, name) for name in self.FIELD_NAMES}

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "SliceRequirements":
        from orion.jsonutil import camel

        by_camel = {camel(name): name for name in cls.FIELD_NAMES}
        kwargs: dict[str, Any] = {}
        for key, value in data.items():
            if key not in by_camel:
                raise ValueError(f"unknown requirement field {key!r}")
            name = by_camel[key]
            if value is None:
                continue
            if name in _INT_FIELDS:
                if isinstance(value, bool) or not isinstance(value, int):
                    raise ValueError(f"{name} must be an integer")
            elif name in _FLOAT_FIELDS:
                if isinstance(value, bool) or not isinstance(value, (int, float)):
                    raise ValueError(f"{name} must be a number")
                value = float(value)
            elif not isinstance(value, str):
                raise ValueError(f"{name} must be a string")
            kwargs[name] = value
        return cls(**kwargs)


class SessionStatus(Enum):
    ACTIVE = "ACTIVE"
    RELEASED = "RELEASED"


@dataclass(frozen=True)
class SessionBooking:
    """A confirmed slice booking held by the booking service."""

    session_id: str
    requirements: SliceRequirements
    created_at: float
    status: SessionStatus = SessionStatus.ACTIVE

    def to_json(self) -> dict[str, Any]:
        return {
            "sessionId": self.session_id,
            "requirements": self.requirements.to_json(),
            "createdAt": self.created_at,
            "status": self.status.value,
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "SessionBooking":
        return cls(
            session_id=data["sessionId"],
            requirements=SliceRequirements.from_json(data["requirements"]),
            created_at=float(data["createdAt"]),
            status=SessionStatus(data["status"]),
        )


_SD_RE = re.compile(r"^[0-9A-F]{6}$")
_MCC_RE = re.compile(r"^[0-9]{3}$")
_MNC_RE = re.compile(r"^[0-9]{2,3}$")


@dataclass(frozen=True)
class SliceId:
    """SST/SD/PLMN/NCI tuple scoping an A1 policy to one slice and cell."""

    sst: int
    sd: str
    plmn_mcc: str
    plmn_mnc: str
    nci: int

    def __post_init__(self) -> None:
        if not 0 <= self.sst <= 255:
            raise ValueError("sst must be within 0..255")
        if not _SD_RE.match(self.sd):
            raise ValueError("sd must be 6 uppercase hex characters")
        if not _MCC_RE.match(self.plmn_mcc):
            raise ValueError("mcc must be a 3-digit string")
        if not _MNC_RE.match(self.plmn_mnc):
            raise ValueError("mnc must be a 2- or 3-digit string")
        if not 0 <= self.nci <= 0xFFFFFFFF:
            raise ValueError("nci must fit an unsigned 32-bit integer")

    def to_json(self) -> dict[str, Any]:
        return {
            "sst": self.sst,
            "sd": self.sd,
            "plmnId": {"mcc": self.plmn_mcc, "mnc": self.plmn_mnc},
            "nci": self.nci,
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "SliceId":
        return cls(
            sst=data["sst"],
            sd=data["sd"],
            plmn_mcc=data["plmnId"]["mcc"],
            plmn_mnc=data["plmnId"]["mnc"],
            nci=data["nci"],
        )


@dataclass(frozen=True)
class SliceSlaObjectives:
    """SLA objectives carried in an A1 policy.

    Throughput objectives are always present (0 when the intent left them
    unstated); delay and error objectives appear only when stated.
    """

    max_dl_thpt_per_ue_bps: int = 0
    max_ul_thpt_per_ue_bps: int = 0
    max_dl_thpt_per_slice_bps: int = 0
    max_ul_thpt_per_slice_bps: int = 0
    dl_delay_budget_ms: Optional[float] = None
    ul_delay_budget_ms: Optional[float] = None
    packet_error_rate: Optional[float] = None

    def __post_init__(self) -> None:
        for name in (
            "max_dl_thpt_per_ue_bps",
            "max_ul_thpt_per_ue_bps",
            "max_dl_thpt_per_slice_bps",
            "max_ul_thpt_per_slice_bps",
        ):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        if (
            self.max_dl_thpt_per_ue_bps
            and self.max_dl_thpt_per_slice_bps
            and self.max_dl_thpt_per_slice_bps < self.max_dl_thpt_per_ue_bps
        ):
            raise ValueError("per-slice dl throughput below per-UE value")
        if (
            self.max_ul_thpt_per_ue_bps
            and self.max_ul_thpt_per_slice_bps
            and self.max_ul_thpt_per_slice_bps < self.max_ul_thpt_per_ue_bps
        ):
            raise ValueError("per-slice ul throughput below per-UE value")

    def to_json(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "maxDlThptPerUe": self.max_dl_thpt_per_ue_bps,
            "maxUlThptPerUe": self.max_ul_thpt_per_ue_bps,
            "maxDlThptPerSlice": self.max_dl_thpt_per_slice_bps,
            "maxUlThptPerSlice": self.max_ul_thpt_per_slice_bps,
        }
        if self.dl_delay_budget_ms is not None:
            data["dlDelayBudgetMs"] = self.dl_delay_budget_ms
        if self.ul_delay_budget_ms is not None:
            data["ulDelayBudgetMs"] = self.ul_delay_budget_ms
        if self.packet_error_rate is not None:
            data["packetErrorRate"] = self.packet_error_rate
        return data

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "SliceSlaObjectives":
        return cls(
            max_dl_thpt_per_ue_bps=data["maxDlThptPerUe"],
            max_ul_thpt_per_ue_bps=data["maxUlThptPerUe"],
            max_dl_thpt_per_slice_bps=data["maxDlThptPerSlice"],
            max_ul_thpt_per_slice_bps=data["maxUlThptPerSlice"],
            dl_delay_budget_ms=data.get("dlDelayBudgetMs"),
            ul_delay_budget_ms=data.get("ulDelayBudgetMs"),
            packet_error_rate=data.get("packetErrorRate"),
        )


SLICE_SLA_POLICYTYPE_ID = 10002


@dataclass(frozen=True)
class A1Policy:
    """Slice-SLA policy instance handed from the composer to the mediator."""

    ric_id: str
    policy_id: str
    service_id: str
    slice_id: SliceId
    slice_type: SliceType
    objectives: SliceSlaObjectives
    policytype_id: int = SLICE_SLA_POLICYTYPE_ID

    def to_json(self) -> dict[str, Any]:
        return {
            "ric_id": self.ric_id,
            "policy_id": self.policy_id,
            "service_id": self.service_id,
            "policy_data": {
                "scope": {
                    "sliceId": self.slice_id.to_json(),
                    "sliceType": self.slice_type.value,
                },
                "sliceSlaObjectives": self.objectives.to_json(),
            },
            "policytype_id": self.policytype_id,
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "A1Policy":
        scope = data["policy_data"]["scope"]
        return cls(
            ric_id=data["ric_id"],
            policy_id=data["policy_id"],
            service_id=data["service_id"],
            slice_id=SliceId.from_json(scope["sliceId"]),
            slice_type=SliceType.parse(scope["sliceType"]),
            objectives=SliceSlaObjectives.from_json(
                data["policy_data"]["sliceSlaObjectives"]
            ),
            policytype_id=data["policytype_id"],
        )


# Max transmission bandwidth configuration: (numerology, channel bandwidth Hz)
# -> N_RB, transcribed from 3GPP TS 38.101-1 Table 5.3.2-1 (FR1, mu 0..2)
# and TS 38.101-2 Table 5.3.2-1 (FR2, mu 3).
_MHZ = 1_000_000
CHANNEL_BANDWIDTH_PRB: dict[tuple[int, int], int] = {
    (0, 5 * _MHZ): 25,
    (0, 10 * _MHZ): 52,
    (0, 15 * _MHZ): 79,
    (0, 20 * _MHZ): 106,
    (0, 25 * _MHZ): 133,
    (0, 30 * _MHZ): 160,
    (0, 35 * _MHZ): 188,
    (0, 40 * _MHZ): 216,
    (0, 45 * _MHZ): 242,
    (0, 50 * _MHZ): 270,
    (1, 5 * _MHZ): 11,
    (1, 10 * _MHZ): 24,
    (1, 15 * _MHZ): 38,
    (1, 20 * _MHZ): 51,
    (1, 25 * _MHZ): 65,
    (1, 30 * _MHZ): 78,
    (1, 35 * _MHZ): 92,
    (1, 40 * _MHZ): 106,
    (1, 45 * _MHZ): 119,
    (1, 50 * _MHZ): 133,
    (1, 60 * _MHZ): 162,
    (1, 70 * _MHZ): 189,
    (1, 80 * _MHZ): 217,
    (1, 90 * _MHZ): 245,
    (1, 100 * _MHZ): 273,
    (2, 10 * _MHZ): 11,
    (2, 15 * _MHZ): 18,
    (2, 20 * _MHZ): 24,
    (2, 25 * _MHZ): 31,
    (2, 30 * _MHZ): 38,
    (2, 35 * _MHZ): 44,
    (2, 40 * _MHZ): 51,
    (2, 45 * _MHZ): 58,
    (2, 50 * _MHZ): 65,
    (2, 60 * _MHZ): 79,
    (2, 70 * _MHZ): 93,
    (2, 80 * _MHZ): 107,
    (2, 90 * _MHZ): 121,
    (2, 100 * _MHZ): 135,
    (3, 50 * _MHZ): 32,
    (3, 100 * _MHZ): 66,
    (3, 200 * _MHZ): 132,
    (3, 400 * _MHZ): 264,
}


def n_prb_for(bandwidth_hz: int, numerology_mu: int) -> int:
    """Resource blocks for a (bandwidth, numerology) pair per the 3GPP table."""
    try:
        return CHANNEL_BANDWIDTH_PRB[(numerology_mu, bandwidth_hz)]
    except KeyError:
        raise ValueError(
            f"no channel bandwidth entry for mu={numerology_mu}, "
            f"bandwidth={bandwidth_hz} Hz"
        ) from None


@dataclass(frozen=True)
class CellConfig:
    """Radio configuration of a simulated cell."""

    node_id: str
    bandwidth_hz: int
    numerology_mu: int
    mimo_layers: int
    modulation_bits: int
    n_prb: int
    overhead_fraction: float = 0.14

    def __post_init__(self) -> None:
        if self.bandwidth_hz <= 0:
            raise ValueError("bandwidth_hz must be positive")
        if not 0 <= self.numerology_mu <= 4:
            raise ValueError("numerology_mu must be within 0..4")
        if not 1 <= self.mimo_layers <= 8:
            raise ValueError("mimo_layers must be within 1..8")
        if self.modulation_bits not in (2, 4, 6, 8):
            raise ValueError("modulation_bits must be one of 2, 4, 6, 8")
        if self.n_prb <= 0:
            raise ValueError("n_prb must be positive")
        if self.n_prb != n_prb_for(self.bandwidth_hz, self.numerology_mu):
            raise ValueError(
                "n_prb inconsistent with bandwidth/numerology per the "
                "channel bandwidth table"
            )
        if not 0 <= self.overhead_fraction <= 0.5:
            raise ValueError("overhead_fraction must be within [0, 0.5]")

    def to_json(self) -> dict[str, Any]:
        return {
            "nodeId": self.node_id,
            "bandwidthHz": self.bandwidth_hz,
            "numerologyMu": self.numerology_mu,
            "mimoLayers": self.mimo_layers,
            "modulationBits": self.modulation_bits,
            "nPrb": self.n_prb,
            "overheadFraction": self.overhead_fraction,
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "CellConfig":
        return cls(
            node_id=data["nodeId"],
            bandwidth_hz=data["bandwidthHz"],
            numerology_mu=data["numerologyMu"],
            mimo_layers=data["mimoLayers"],
            modulation_bits=data["modulationBits"],
            n_prb=data["nPrb"],
            overhead_fraction=data["overheadFraction"],
        )


@dataclass(frozen=True)
class PrbQuota:
    """Per-slice PRB ratio triple enforced on one node."""

    slice: SliceId
    node_id: str
    dedicated_pct: int
    min_pct: int = 0
    max_pct: int = 100

    def __post_init__(self) -> None:
        if self.dedicated_pct < 1:
            raise ValueError("dedicated_pct must be at least 1")
        if not (
            0 <= self.min_pct <= self.dedicated_pct <= self.max_pct <= 100
        ):
            raise ValueError("quota must satisfy min <= dedicated <= max <= 100")

    def to_json(self) -> dict[str, Any]:
        return {
            "slice": self.slice.to_json(),
            "nodeId": self.node_id,
            "dedicatedPct": self.dedicated_pct,
            "minPct": self.min_pct,
            "maxPct": self.max_pct,
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "PrbQuota":
        return cls(
            slice=SliceId.from_json(data["slice"]),
            node_id=data["nodeId"],
            dedicated_pct=data["dedicatedPct"],
            min_pct=data["minPct"],
            max_pct=data["maxPct"],
        )


@dataclass(frozen=True)
class ClassifiedIntent:
    """Validated, classified intent handed to the policy composer."""

    requirements: SliceRequirements
    slice_type: SliceType
    session_id: str

    def to_json(self) -> dict[str, Any]:
        return {
            "requirements": self.requirements.to_json(),
            "sliceType": self.slice_type.value,
            "sessionId": self.session_id,
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "ClassifiedIntent":
        return cls(
            requirements=SliceRequirements.from_json(data["requirements"]),
            slice_type=SliceType.parse(data["sliceType"]),
            session_id=data["sessionId"],
        )


STAGE_NAMES = (
    "smo_intent_to_policy",
    "smo_mcp_tool_execution",
    "a1_mediator",
    "xapp_full_policy_processing",
    "xapp_policy_to_control",
    "e2_node_control_processing",
)


@dataclass(frozen=True)
class StageTimings:
    """Per-stage durations in milliseconds, keyed by the six fixed stages."""

    durations: dict[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for key, value in self.durations.items():
            if key not in STAGE_NAMES:
                raise ValueError(f"unknown stage {key!r}")
            if value < 0:
                raise ValueError(f"stage {key} has negative duration")

    def merged(self, other: "StageTimings | Mapping[str, float]") -> "StageTimings":
        extra = other.durations if isinstance(other, StageTimings) else other
        return StageTimings({**self.durations, **extra})

    def complete(self) -> bool:
        return all(name in self.durations for name in STAGE_NAMES)

    def to_json(self) -> dict[str, float]:
        return dict(self.durations)

    @classmethod
    def from_json(cls, data: Mapping[str, float]) -> "StageTimings":
        return cls({k: float(v) for k, v in data.items()})


@dataclass(frozen=True)
class IntentRecord:
    """Lifecycle-tracked intent as reported by the gateway."""

    intent_id: str
    text: str
    state: LifecycleState
    conversation_id: str
    session_id: Optional[str] = None
    policy_id: Optional[str] = None
    policytype_id: Optional[int] = None
    quota: Optional[PrbQuota] = None
    slice_type: Optional[SliceType] = None
    policy_state: Optional[str] = None
    pending_clarification: Optional[str] = None
    failure: Optional[str] = None
    timings: StageTimings = field(default_factory=StageTimings)

    def to_json(self) -> dict[str, Any]:
        from orion.domain.lifecycle import legal_events

        return {
            "intentId": self.intent_id,
            "text": self.text,
            "state": self.state.value,
            "conversationId": self.conversation_id,
            "sessionId": self.session_id,
            "policyId": self.policy_id,
            "policytypeId": self.policytype_id,
            "quota": self.quota.to_json() if self.quota else None,
            "sliceType": self.slice_type.value if self.slice_type else None,
            "policyState": self.policy_state,
            "pendingClarification": self.pending_clarification,
            "failure": self.failure,
            "timings": self.timings.to_json(),
            "legalEvents": [event.value for event in legal_events(self.state)],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "IntentRecord":
        return cls(
            intent_id=data["intentId"],
            text=data["text"],
            state=LifecycleState(data["state"]),
            conversation_id=data["conversationId"],
            session_id=data.get("sessionId"),
            policy_id=data.get("policyId"),
            policytype_id=data.get("policytypeId"),
            quota=PrbQuota.from_json(data["quota"]) if data.get("quota") else None,
            slice_type=SliceType.parse(data["sliceType"])
            if data.get("sliceType")
            else None,
            policy_state=data.get("policyState"),
            pending_clarification=data.get("pendingClarification"),
            failure=data.get("failure"),
            timings=StageTimings.from_json(data.get("timings", {})),
        )
