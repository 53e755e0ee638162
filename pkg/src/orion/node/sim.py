"""Simulated gNB with slice-level PRB quota control.

Performs the E2 setup exchange (advertising control style 2 / action 6),
then validates and applies PRB partitions under a capacity guard: the sum
of dedicated ratios across slices never exceeds 100.  Quotas land in a
ledger, not a packet scheduler.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass
from typing import Optional

from orion.domain import CellConfig, SliceId
from orion.e2 import (
    ACTION_SLICE_PRB_QUOTA,
    CAUSE_CAPACITY_EXCEEDED,
    CAUSE_MALFORMED,
    CAUSE_UNKNOWN_FUNCTION,
    CONTROL_STYLE_RADIO_RESOURCE,
    E2SetupRequest,
    FramedConnection,
    FunctionAdvert,
    RicControlAcknowledge,
    RicControlFailure,
    RicControlRequest,
)
from orion.errors import ConnectionLost

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RatioTriple:
    min_pct: int
    dedicated_pct: int
    max_pct: int

    def to_json(self) -> dict:
        return {
            "minPct": self.min_pct,
            "dedicatedPct": self.dedicated_pct,
            "maxPct": self.max_pct,
        }


@dataclass(frozen=True)
class PrbLedger:
    """Read-only snapshot of the node's per-slice allocations."""

    allocations: dict[SliceId, RatioTriple]
    disciplines: dict[SliceId, int]
    cell: CellConfig

    @property
    def dedicated_sum(self) -> int:
        return sum(t.dedicated_pct for t in self.allocations.values())

    def to_json(self) -> dict:
        return {
            "nodeId": self.cell.node_id,
            "cell": self.cell.to_json(),
            "dedicatedSum": self.dedicated_sum,
            "allocations": [
                {
                    "slice": slice_id.to_json(),
                    **triple.to_json(),
                    "discipline": self.disciplines.get(slice_id),
                }
                for slice_id, triple in self.allocations.items()
            ],
        }


class E2NodeSim:
    """gNB simulator: one cell, one E2 connection, a guarded PRB ledger."""

    def __init__(self, cell: CellConfig, ran_function_id: int = 1):
        self.cell = cell
        self.ran_function_id = ran_function_id
        self._allocations: dict[SliceId, RatioTriple] = {}
        self._disciplines: dict[SliceId, int] = {}
        self._lock = threading.Lock()
        self._conn: Optional[FramedConnection] = None
        self._stop = threading.Event()
        self._thread: Optional[threading.Thread] = None
        self._setup_done = threading.Event()

    # -- control handling (pure of transport, used directly by fuzz tests) --

    def handle_control(
        self, req: RicControlRequest
    ) -> RicControlAcknowledge | RicControlFailure:
        """Apply one control request under the capacity guard.

        A rejected request leaves the ledger untouched; re-control of an
        existing slice replaces its triple rather than adding to it; a
        zero dedicated ratio releases the slice's partition.
        """
        if (
            req.ran_function_id != self.ran_function_id
            or req.style != CONTROL_STYLE_RADIO_RESOURCE
            or req.action_id != ACTION_SLICE_PRB_QUOTA
        ):
            return RicControlFailure(
                req.transaction_id,
                CAUSE_UNKNOWN_FUNCTION,
                "unsupported function/style/action",
            )
        if not req.min_ratio <= req.dedicated_ratio <= req.max_ratio:
            return RicControlFailure(
                req.transaction_id, CAUSE_MALFORMED, "ratios must be ordered"
            )
        if req.dedicated_ratio == 0:
            # zero-dedicated control releases the slice's partition
            with self._lock:
                self._allocations.pop(req.slice_id, None)
                self._disciplines.pop(req.slice_id, None)
            return RicControlAcknowledge(req.transaction_id, req.ran_function_id)
        with self._lock:
            other_sum = sum(
                triple.dedicated_pct
                for slice_id, triple in self._allocations.items()
                if slice_id != req.slice_id
            )
            if other_sum + req.dedicated_ratio > 100:
                return RicControlFailure(
                    req.transaction_id, CAUSE_CAPACITY_EXCEEDED, "capacity exceeded"
                )
            self._allocations[req.slice_id] = RatioTriple(
                req.min_ratio, req.dedicated_ratio, req.max_ratio
            )
            self._disciplines[req.slice_id] = req.discipline
        return RicControlAcknowledge(req.transaction_id, req.ran_function_id)

    def snapshot(self) -> PrbLedger:
        with self._lock:
            return PrbLedger(
                allocations=dict(self._allocations),
                disciplines=dict(self._disciplines),
                cell=self.cell,
            )

    # -- transport loop ------------------------------------------------

    def connect(self, host: str, port: int, timeout: float = 5.0) -> None:
        """Run E2 setup, then serve control requests on a daemon thread."""
        conn = FramedConnection.connect(host, port, timeout=timeout)
        conn.send(
            E2SetupRequest(
                transaction_id=0,
                node_id=self.cell.node_id,
                functions=(
                    FunctionAdvert(
                        self.ran_function_id,
                        CONTROL_STYLE_RADIO_RESOURCE,
                        ACTION_SLICE_PRB_QUOTA,
                    ),
                ),
            )
        )
        response = conn.recv(timeout=timeout)
        logger.info("e2 setup complete for %s: %r", self.cell.node_id, response)
        self._conn = conn
        self._setup_done.set()
        self._thread = threading.Thread(
            target=self._serve, name=f"e2node-{self.cell.node_id}", daemon=True
        )
        self._thread.start()

    def _serve(self) -> None:
        assert self._conn is not None
        while not self._stop.is_set():
            try:
                pdu = self._conn.recv(timeout=0.5)
            except TimeoutError:
                continue
            except ConnectionLost as exc:
                logger.info("e2 connection closed: %s", exc)
                return
            if isinstance(pdu, RicControlRequest):
                self._conn.send(self.handle_control(pdu))
            else:
                self._conn.send(
                    RicControlFailure(
                        pdu.transaction_id, CAUSE_MALFORMED, "unexpected pdu"
                    )
                )

    def stop(self) -> None:
        self._stop.set()
        if self._conn is not None:
            self._conn.close()
        if self._thread is not None:
            self._thread.join(timeout=2)
