"""Policy composer: structured intents in, A1 policies out.

Objective derivation: per-UE throughputs are the stated per-device
values (0 when unstated, the omission is noted); per-slice throughput is
the stated per-slice value, else per-device x device_count when both are
present, else the per-device value alone.  Scope ids come from static
configuration plus a seedable id source so golden runs are reproducible.
"""

from __future__ import annotations

import logging
import random
import threading
from dataclasses import dataclass
from typing import Any, Optional, Protocol

from orion.domain import (
    A1Policy,
    ClassifiedIntent,
    SliceId,
    SliceSlaObjectives,
    sst_for,
    validate_requirements,
)
from orion.errors import InvalidIntent, MissingThroughput

logger = logging.getLogger(__name__)


class MediatorBackend(Protocol):
    """put_policy(policy_json) -> receipt; raises MediatorUnavailable or
    DuplicatePolicyId."""

    def put_policy(self, policy_json: dict) -> dict: ...


class IdSource:
    """Seedable source of policy ids (zero-padded decimal) and slice
    differentiators (6 hex chars); values never repeat within a run."""

    def __init__(self, seed: Optional[int] = None):
        self._rng = random.Random(seed)
        self._used_policy_ids: set[str] = set()
        self._used_sds: set[str] = set()
        self._lock = threading.Lock()

    def next_policy_id(self) -> str:
        with self._lock:
            while True:
                candidate = f"{self._rng.randrange(100000):05d}"
                if candidate not in self._used_policy_ids:
                    self._used_policy_ids.add(candidate)
                    return candidate

    def next_sd(self) -> str:
        with self._lock:
            while True:
                candidate = f"{self._rng.getrandbits(24):06X}"
                if candidate not in self._used_sds:
                    self._used_sds.add(candidate)
                    return candidate


@dataclass
class RappConfig:
    ric_id: str = "ric4"
    service_id: str = "intentSlice"
    plmn_mcc: str = "724"
    plmn_mnc: str = "11"
    nci: int = 1
    sst_profile: str = "standard"
    id_seed: Optional[int] = None
    # pinned values for golden reproduction; normally None
    fixed_policy_id: Optional[str] = None
    fixed_sd: Optional[str] = None


class PolicyComposer:
    def __init__(self, config: RappConfig, mediator: Optional[MediatorBackend] = None):
        self.config = config
        self.mediator = mediator
        self.ids = IdSource(config.id_seed)
        self._generated: dict[str, dict] = {}

    def generate_policy(self, ci: ClassifiedIntent) -> A1Policy:
        policy, _ = self.generate(ci)
        return policy

    def generate(self, ci: ClassifiedIntent) -> tuple[A1Policy, list[str]]:
        if not ci.session_id:
            raise InvalidIntent("classified intent lacks a session id")
        violations = validate_requirements(ci.requirements)
        if violations:
            raise InvalidIntent("; ".join(violations))

        req = ci.requirements
        notes: list[str] = []
        dl_ue = req.max_dl_thpt_per_device_bps or 0
        ul_ue = req.max_ul_thpt_per_device_bps or 0
        if req.max_dl_thpt_per_device_bps is None:
            notes.append("maxDlThptPerUe unstated; serialized as 0")
        if req.max_ul_thpt_per_device_bps is None:
            notes.append("maxUlThptPerUe unstated; serialized as 0")
        dl_slice = self._aggregate(
            req.max_dl_thpt_per_slice_bps, dl_ue, req.device_count
        )
        ul_slice = self._aggregate(
            req.max_ul_thpt_per_slice_bps, ul_ue, req.device_count
        )
        if not any((dl_ue, ul_ue, dl_slice, ul_slice)):
            raise MissingThroughput(
                "intent states no per-slice or per-device throughput"
            )

        objectives = SliceSlaObjectives(
            max_dl_thpt_per_ue_bps=dl_ue,
            max_ul_thpt_per_ue_bps=ul_ue,
            max_dl_thpt_per_slice_bps=dl_slice,
            max_ul_thpt_per_slice_bps=ul_slice,
            dl_delay_budget_ms=req.dl_delay_budget_ms,
            ul_delay_budget_ms=req.ul_delay_budget_ms,
            packet_error_rate=req.packet_error_rate,
        )
        policy = A1Policy(
            ric_id=self.config.ric_id,
            policy_id=self.config.fixed_policy_id or self.ids.next_policy_id(),
            service_id=self.config.service_id,
            slice_id=SliceId(
                sst=sst_for(ci.slice_type, self.config.sst_profile),
                sd=self.config.fixed_sd or self.ids.next_sd(),
                plmn_mcc=self.config.plmn_mcc,
                plmn_mnc=self.config.plmn_mnc,
                nci=self.config.nci,
            ),
            slice_type=ci.slice_type,
            objectives=objectives,
        )
        self._generated[policy.policy_id] = policy.to_json()
        return policy, notes

    @staticmethod
    def _aggregate(
        stated_slice: Optional[int], per_ue: int, device_count: Optional[int]
    ) -> int:
        if stated_slice is not None:
            return stated_slice
        if per_ue and device_count:
            return per_ue * device_count
        return per_ue

    def push_policy(self, policy: A1Policy) -> dict[str, Any]:
        """Hand the policy to the mediator; returns its receipt."""
        if self.mediator is None:
            raise InvalidIntent("composer has no mediator configured")
        return self.mediator.put_policy(policy.to_json())

    def get_generated(self, policy_id: str) -> Optional[dict]:
        return self._generated.get(policy_id)
