"""Policy mediator: stores A1 policies, pushes them to subscribed xApps,
and collects status responses, closing the A1 loop.

The store is in-memory; an optional append-only journal (one JSON object
per line) records puts, status reports and deletions for post-mortems.
"""

from __future__ import annotations

import logging
import threading
import time
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Optional, Protocol

from orion.domain import A1Policy
from orion.errors import (
    DuplicatePolicyId,
    IllegalStatusTransition,
    SchemaViolation,
    UnknownPolicy,
)
from orion.jsonutil import canonical_dumps

logger = logging.getLogger(__name__)


class PolicyState(Enum):
    CREATED = "CREATED"
    ENFORCED = "ENFORCED"
    NOT_ENFORCED = "NOT_ENFORCED"
    DELETED = "DELETED"


@dataclass(frozen=True)
class PolicyStatus:
    policy_id: str
    policytype_id: int
    state: PolicyState
    detail: Optional[str] = None

    def to_json(self) -> dict[str, Any]:
        return {
            "policyId": self.policy_id,
            "policytypeId": self.policytype_id,
            "state": self.state.value,
            "detail": self.detail,
        }


class Subscriber(Protocol):
    """Delivery surface of one subscribed xApp."""

    def push(self, policy_json: dict) -> None: ...

    def deleted(self, policytype_id: int, policy_id: str, policy_json: dict) -> None: ...


@dataclass
class _Record:
    policy_json: dict
    state: PolicyState
    detail: Optional[str] = None
    timings: dict[str, float] = field(default_factory=dict)
    quota: Optional[dict] = None

    def status_json(self) -> dict[str, Any]:
        data = PolicyStatus(
            self.policy_json["policy_id"],
            self.policy_json["policytype_id"],
            self.state,
            self.detail,
        ).to_json()
        data["timings"] = dict(self.timings)
        data["quota"] = self.quota
        return data


StatusListener = Callable[[dict], None]

_LEGAL_REPORTS = {
    PolicyState.CREATED: {PolicyState.ENFORCED, PolicyState.NOT_ENFORCED},
}


class A1Mediator:
    def __init__(self, journal_path: Optional[Path] = None):
        self._records: dict[tuple[int, str], _Record] = {}
        self._subscribers: dict[int, list[Subscriber]] = {}
        self._listeners: list[StatusListener] = []
        self._lock = threading.Lock()
        self._status_changed = threading.Condition(self._lock)
        self._journal_path = Path(journal_path) if journal_path else None

    # -- policy intake -----------------------------------------------------

    def put_policy(self, policy_json: dict) -> dict[str, Any]:
        """Store and distribute one policy; returns the CREATED receipt."""
        t0 = time.perf_counter()
        try:
            policy = A1Policy.from_json(policy_json)
        except (KeyError, ValueError, TypeError) as exc:
            raise SchemaViolation(f"policy does not parse: {exc}") from exc
        key = (policy.policytype_id, policy.policy_id)
        with self._lock:
            if key in self._records:
                raise DuplicatePolicyId(
                    f"policy {policy.policy_id} of type {policy.policytype_id} exists"
                )
            self._records[key] = _Record(policy_json, PolicyState.CREATED)
            subscribers = list(self._subscribers.get(policy.policytype_id, ()))
        self._journal("put", policy_json=policy_json)
        for subscriber in subscribers:
            subscriber.push(policy_json)
        elapsed_ms = (time.perf_counter() - t0) * 1000.0
        return {
            "policyId": policy.policy_id,
            "policytypeId": policy.policytype_id,
            "state": PolicyState.CREATED.value,
            "processingMs": elapsed_ms,
            "subscribersNotified": len(subscribers),
        }

    # -- status flow ---------------------------------------------------------

    def report_status(
        self,
        policy_id: str,
        policytype_id: int,
        state: PolicyState,
        detail: Optional[str] = None,
        timings: Optional[dict[str, float]] = None,
        quota: Optional[dict] = None,
    ) -> PolicyStatus:
        key = (policytype_id, policy_id)
        with self._lock:
            record = self._records.get(key)
            if record is None:
                raise UnknownPolicy(f"{policytype_id}/{policy_id}")
            if state not in _LEGAL_REPORTS.get(record.state, set()):
                raise IllegalStatusTransition(
                    f"{record.state.value} -> {state.value}"
                )
            record.state = state
            record.detail = detail
            if timings:
                record.timings.update(timings)
            if quota is not None:
                record.quota = quota
            status_json = record.status_json()
            self._status_changed.notify_all()
        self._journal("status", status=status_json)
        self._notify(status_json)
        return PolicyStatus(policy_id, policytype_id, state, detail)

    def delete_policy(self, policy_id: str, policytype_id: int) -> PolicyStatus:
        key = (policytype_id, policy_id)
        with self._lock:
            record = self._records.pop(key, None)
            if record is None:
                raise UnknownPolicy(f"{policytype_id}/{policy_id}")
            subscribers = list(self._subscribers.get(policytype_id, ()))
            self._status_changed.notify_all()
        for subscriber in subscribers:
            subscriber.deleted(policytype_id, policy_id, record.policy_json)
        status = PolicyStatus(policy_id, policytype_id, PolicyState.DELETED)
        self._journal("delete", status=status.to_json())
        self._notify({**status.to_json(), "timings": {}, "quota": None})
        return status

    # -- queries ---------------------------------------------------------

    def get_policy(self, policy_id: str, policytype_id: int) -> dict:
        with self._lock:
            record = self._records.get((policytype_id, policy_id))
            if record is None:
                raise UnknownPolicy(f"{policytype_id}/{policy_id}")
            return dict(record.policy_json)

    def get_status(self, policy_id: str, policytype_id: int) -> dict[str, Any]:
        with self._lock:
            record = self._records.get((policytype_id, policy_id))
            if record is None:
                raise UnknownPolicy(f"{policytype_id}/{policy_id}")
            return record.status_json()

    def list_policies(self) -> list[dict[str, Any]]:
        with self._lock:
            return [record.status_json() for record in self._records.values()]

    def wait_for_terminal_status(
        self, policy_id: str, policytype_id: int, timeout: float = 5.0
    ) -> Optional[dict[str, Any]]:
        """Block until the policy leaves CREATED (or vanishes); None on timeout."""
        key = (policytype_id, policy_id)
        deadline = time.monotonic() + timeout

        def resolved() -> bool:
            record = self._records.get(key)
            return record is None or record.state is not PolicyState.CREATED

        with self._status_changed:
            while not resolved():
                remaining = deadline - time.monotonic()
                if remaining <= 0:
                    return None
                self._status_changed.wait(remaining)
            record = self._records.get(key)
            return record.status_json() if record else None

    # -- wiring ------------------------------------------------------------

    def subscribe(self, policytype_id: int, subscriber: Subscriber) -> None:
        with self._lock:
            self._subscribers.setdefault(policytype_id, []).append(subscriber)

    def add_status_listener(self, listener: StatusListener) -> None:
        self._listeners.append(listener)

    def _notify(self, status_json: dict) -> None:
        for listener in self._listeners:
            try:
                listener(status_json)
            except Exception:  # noqa: BLE001
                logger.exception("status listener failed")

    def _journal(self, event: str, **payload: Any) -> None:
        if self._journal_path is None:
            return
        line = canonical_dumps({"ts": time.time(), "event": event, **payload})
        with self._journal_path.open("a", encoding="utf-8") as fh:
            fh.write(line + "\n")
