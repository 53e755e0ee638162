"""Policy enforcer: A1 termination point of the near-RT side.

Turns SLA objectives into a PRB quota via the exact ceiling formula,
drives the E2 control exchange, and reports exactly one policy status
per received policy -- failures become NOT_ENFORCED reports, never
exceptions back to the mediator.
"""

from __future__ import annotations

import itertools
import logging
import threading
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from orion.domain import A1Policy, CellConfig, PrbQuota, SliceId, SliceType
from orion.e2 import (
    ACTION_SLICE_PRB_QUOTA,
    CONTROL_STYLE_RADIO_RESOURCE,
    DISCIPLINE_EDF,
    DISCIPLINE_PF,
    RicControlAcknowledge,
    RicControlFailure,
    RicControlRequest,
)
from orion.errors import Infeasible, TransportError
from orion.xapp.capacity import cell_capacity
from orion.xapp.quota import compute_prb_percent
from orion.xapp.termination import E2Termination

logger = logging.getLogger(__name__)

# status states reported back over A1
STATUS_ENFORCED = "ENFORCED"
STATUS_NOT_ENFORCED = "NOT_ENFORCED"

StatusSink = Callable[[dict], None]


@dataclass(frozen=True)
class InventoryEntry:
    """One manageable cell: connection identity plus radio configuration."""

    node_id: str
    nci: int
    cell: CellConfig


@dataclass
class XappConfig:
    ran_function_id: int = 1
    default_min_ratio: int = 0
    default_max_ratio: int = 100
    ack_timeout_s: float = 2.0
    inventory: list[InventoryEntry] = field(default_factory=list)


class PolicyEnforcer:
    def __init__(
        self,
        termination: E2Termination,
        config: XappConfig,
        status_sink: StatusSink,
    ):
        self.termination = termination
        self.config = config
        self.status_sink = status_sink
        self._txid = itertools.count(1)
        self._txid_lock = threading.Lock()
        self._quotas: dict[tuple[int, str], PrbQuota] = {}

    # -- inventory -------------------------------------------------------

    def inventory(self) -> list[InventoryEntry]:
        """Entries whose node completed E2 setup and has a known cell config."""
        connected = set(self.termination.node_ids())
        return [e for e in self.config.inventory if e.node_id in connected]

    def _select_node(self, nci: int) -> tuple[Optional[InventoryEntry], Optional[str]]:
        nodes = self.inventory()
        if not nodes:
            return None, "no connected e2 node"
        for entry in nodes:
            if entry.nci == nci:
                return entry, None
        return nodes[0], f"nci {nci} not in inventory; using node {nodes[0].node_id}"

    def _next_txid(self) -> int:
        with self._txid_lock:
            return next(self._txid) & 0xFFFFFFFF

    # -- control message construction -------------------------------------

    def build_control(
        self, slice_id: SliceId, quota: PrbQuota, ran_function_id: int,
        discipline: int = DISCIPLINE_PF,
    ) -> RicControlRequest:
        """Control request carrying style 2 / action 6 and the ratio triple."""
        return RicControlRequest(
            transaction_id=self._next_txid(),
            ran_function_id=ran_function_id,
            style=CONTROL_STYLE_RADIO_RESOURCE,
            action_id=ACTION_SLICE_PRB_QUOTA,
            slice_id=slice_id,
            min_ratio=quota.min_pct,
            dedicated_ratio=quota.dedicated_pct,
            max_ratio=quota.max_pct,
            discipline=discipline,
        )

    # -- policy handling ---------------------------------------------------

    def on_policy_json(self, data: dict) -> dict:
        try:
            policy = A1Policy.from_json(data)
        except (KeyError, ValueError, TypeError) as exc:
            report = self._report(
                str(data.get("policy_id", "?")),
                int(data.get("policytype_id", 0) or 0),
                STATUS_NOT_ENFORCED,
                f"malformed policy: {exc}",
                {},
                None,
            )
            return report
        return self.on_policy(policy)

    def on_policy(self, policy: A1Policy) -> dict:
        """Enforce one policy and report its status; never raises upstream."""
        t_start = time.perf_counter()
        timings: dict[str, float] = {}
        quota: Optional[PrbQuota] = None
        try:
            state, detail, quota, timings = self._enforce(policy, t_start)
        except Exception as exc:  # noqa: BLE001 - everything becomes a report
            logger.exception("policy %s failed", policy.policy_id)
            state, detail = STATUS_NOT_ENFORCED, f"internal error: {exc}"
        timings["xapp_full_policy_processing"] = (
            time.perf_counter() - t_start
        ) * 1000.0
        return self._report(
            policy.policy_id, policy.policytype_id, state, detail, timings, quota
        )

    def _enforce(self, policy: A1Policy, t_start: float):
        timings: dict[str, float] = {}
        entry, note = self._select_node(policy.slice_id.nci)
        if entry is None:
            return STATUS_NOT_ENFORCED, note, None, timings

        requested = policy.objectives.max_dl_thpt_per_slice_bps
        if requested <= 0:
            return (
                STATUS_NOT_ENFORCED,
                "no downlink per-slice throughput objective",
                None,
                timings,
            )
        capacity = cell_capacity(entry.cell, "dl")
        try:
            percent = compute_prb_percent(requested, capacity)
        except Infeasible as exc:
            return STATUS_NOT_ENFORCED, f"infeasible: {exc}", None, timings

        quota = PrbQuota(
            slice=policy.slice_id,
            node_id=entry.node_id,
            dedicated_pct=percent,
            min_pct=self.config.default_min_ratio,
            max_pct=self.config.default_max_ratio,
        )
        discipline = (
            DISCIPLINE_EDF if policy.slice_type is SliceType.URLLC else DISCIPLINE_PF
        )
        request = self.build_control(
            policy.slice_id, quota, self.config.ran_function_id, discipline
        )
        timings["xapp_policy_to_control"] = (time.perf_counter() - t_start) * 1000.0

        t_send = time.perf_counter()
        try:
            response = self.termination.send_control(
                entry.node_id, request, timeout=self.config.ack_timeout_s
            )
        except TimeoutError:
            return STATUS_NOT_ENFORCED, "control acknowledge timeout", None, timings
        except TransportError as exc:
            return STATUS_NOT_ENFORCED, f"e2 transport: {exc}", None, timings
        # observed from this side of the stream: node processing plus the
        # (local) wire, the closest desk-scale stand-in for node time
        timings["e2_node_control_processing"] = (
            time.perf_counter() - t_send
        ) * 1000.0

        if isinstance(response, RicControlAcknowledge):
            self._quotas[(policy.policytype_id, policy.policy_id)] = quota
            detail = note or "quota applied"
            return STATUS_ENFORCED, detail, quota, timings
        assert isinstance(response, RicControlFailure)
        return STATUS_NOT_ENFORCED, response.detail or "control failure", None, timings

    def on_policy_deleted(self, policytype_id: int, policy_id: str, data: dict) -> None:
        """Deletion notice: release the slice quota at the node (zero control)."""
        quota = self._quotas.pop((policytype_id, policy_id), None)
        if quota is None:
            return
        release = RicControlRequest(
            transaction_id=self._next_txid(),
            ran_function_id=self.config.ran_function_id,
            style=CONTROL_STYLE_RADIO_RESOURCE,
            action_id=ACTION_SLICE_PRB_QUOTA,
            slice_id=quota.slice,
            min_ratio=0,
            dedicated_ratio=0,
            max_ratio=0,
            discipline=DISCIPLINE_PF,
        )
        try:
            self.termination.send_control(
                quota.node_id, release, timeout=self.config.ack_timeout_s
            )
        except (TimeoutError, TransportError) as exc:
            logger.warning("quota release for %s failed: %s", policy_id, exc)

    def quotas(self) -> dict[tuple[int, str], PrbQuota]:
        return dict(self._quotas)

    def _report(
        self,
        policy_id: str,
        policytype_id: int,
        state: str,
        detail: Optional[str],
        timings: dict[str, float],
        quota: Optional[PrbQuota],
    ) -> dict:
        report = {
            "policyId": policy_id,
            "policytypeId": policytype_id,
            "state": state,
            "detail": detail,
            "timings": timings,
            "quota": quota.to_json() if quota else None,
        }
        try:
            self.status_sink(report)
        except Exception:  # noqa: BLE001 - reporting must not kill the loop
            logger.exception("status report for %s failed", policy_id)
        return report
