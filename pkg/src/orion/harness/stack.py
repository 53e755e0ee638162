"""Full-pipeline wiring.

InProcessStack connects the cores directly (the E2 leg still rides the
real framed TCP stream); HttpStack puts every service behind its own
HTTP listener and wires the same cores through the HTTP clients, so both
stacks exercise identical service logic.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from orion.booking.core import BookingStore
from orion.booking.service import HttpBookingClient, InProcessBookingBackend
from orion.booking.service import create_app as booking_app
from orion.bridge.core import ToolServer, booking_executor, create_session_descriptor
from orion.bridge.service import HttpBridgeClient
from orion.bridge.service import create_app as bridge_app
from orion.domain import CellConfig
from orion.errors import ServicesUnavailable, UnknownPolicy
from orion.gateway.pipeline import GatewayConfig, IntentGateway
from orion.gateway.service import create_app as gateway_app
from orion.gateway.translator import DeterministicTranslator
from orion.httputil import ServerHandle
from orion.mediator.core import A1Mediator, PolicyState
from orion.mediator.service import HttpMediatorClient, HttpXappSubscriber
from orion.mediator.service import create_app as mediator_app
from orion.node.service import create_app as node_app
from orion.node.sim import E2NodeSim
from orion.rapp.composer import PolicyComposer, RappConfig
from orion.rapp.service import HttpRappClient, InProcessRappClient
from orion.rapp.service import create_app as rapp_app
from orion.xapp.enforcer import InventoryEntry, PolicyEnforcer, XappConfig
from orion.xapp.service import AsyncPolicyWorker
from orion.xapp.service import create_app as xapp_app
from orion.xapp.termination import E2Termination

logger = logging.getLogger(__name__)

DEFAULT_CELL = CellConfig(
    node_id="gnb-sim-1",
    bandwidth_hz=100_000_000,
    numerology_mu=1,
    mimo_layers=4,
    modulation_bits=8,
    n_prb=273,
    overhead_fraction=0.14,
)


@dataclass
class StackConfig:
    booking_threshold: int = 10
    booking_id_seed: Optional[int] = None
    rapp: RappConfig = field(default_factory=RappConfig)
    cell: CellConfig = DEFAULT_CELL
    nci: int = 1
    clarification_bound: int = 2
    policy_wait_s: float = 5.0
    ack_timeout_s: float = 2.0
    journal_path: Optional[Path] = None


def _status_bridge(mediator: A1Mediator):
    """xApp status sink feeding the mediator core directly."""

    def sink(report: dict) -> None:
        try:
            mediator.report_status(
                policy_id=report["policyId"],
                policytype_id=report["policytypeId"],
                state=PolicyState(report["state"]),
                detail=report.get("detail"),
                timings=report.get("timings"),
                quota=report.get("quota"),
            )
        except UnknownPolicy:
            logger.info("status for removed policy %s dropped", report["policyId"])

    return sink


class InProcessStack:
    def __init__(self, translator=None, config: Optional[StackConfig] = None):
        cfg = config or StackConfig()
        self.config = cfg

        self.store = BookingStore(cfg.booking_threshold, id_seed=cfg.booking_id_seed)
        self.booking_backend = InProcessBookingBackend(self.store)
        self.tool_server = ToolServer()
        self.tool_server.register(
            create_session_descriptor(),
            booking_executor(self.booking_backend),
            aliases=("network_slice_booking",),
        )

        self.mediator = A1Mediator(journal_path=cfg.journal_path)
        self.termination = E2Termination()
        self.node = E2NodeSim(cfg.cell)
        self.node.connect(self.termination.host, self.termination.port)
        if not self.termination.wait_for_node(cfg.cell.node_id, timeout=5):
            raise ServicesUnavailable("e2 node failed to complete setup")

        self.enforcer = PolicyEnforcer(
            self.termination,
            XappConfig(
                ack_timeout_s=cfg.ack_timeout_s,
                inventory=[InventoryEntry(cfg.cell.node_id, cfg.nci, cfg.cell)],
            ),
            status_sink=_status_bridge(self.mediator),
        )
        self.worker = AsyncPolicyWorker(self.enforcer)
        self.mediator.subscribe(10002, self.worker)

        self.composer = PolicyComposer(cfg.rapp, mediator=self.mediator)
        self.gateway = IntentGateway(
            translator or DeterministicTranslator(),
            bridge=self.tool_server,
            rapp=InProcessRappClient(self.composer),
            mediator=self.mediator,
            booking=self.store,
            config=GatewayConfig(
                clarification_bound=cfg.clarification_bound,
                policy_wait_s=cfg.policy_wait_s,
            ),
        )

    def __enter__(self) -> "InProcessStack":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def close(self) -> None:
        self.worker.join()
        self.node.stop()
        self.termination.close()


class HttpStack:
    """Every service on its own listener; gateway optionally served too."""

    def __init__(
        self,
        translator=None,
        config: Optional[StackConfig] = None,
        serve_gateway: bool = True,
    ):
        cfg = config or StackConfig()
        self.config = cfg
        self._servers: list[ServerHandle] = []

        self.store = BookingStore(cfg.booking_threshold, id_seed=cfg.booking_id_seed)
        self.booking_server = self._serve(booking_app(self.store))

        self.tool_server = ToolServer()
        self.tool_server.register(
            create_session_descriptor(),
            booking_executor(HttpBookingClient(self.booking_server.base_url)),
            aliases=("network_slice_booking",),
        )
        self.bridge_server = self._serve(bridge_app(self.tool_server))

        self.mediator = A1Mediator(journal_path=cfg.journal_path)
        self.mediator_server = self._serve(mediator_app(self.mediator))

        self.termination = E2Termination()
        self.node = E2NodeSim(cfg.cell)
        self.node.connect(self.termination.host, self.termination.port)
        if not self.termination.wait_for_node(cfg.cell.node_id, timeout=5):
            raise ServicesUnavailable("e2 node failed to complete setup")
        self.node_server = self._serve(node_app(self.node))

        status_client = HttpMediatorClient(self.mediator_server.base_url)
        self.enforcer = PolicyEnforcer(
            self.termination,
            XappConfig(
                ack_timeout_s=cfg.ack_timeout_s,
                inventory=[InventoryEntry(cfg.cell.node_id, cfg.nci, cfg.cell)],
            ),
            status_sink=status_client.report_status,
        )
        self.worker = AsyncPolicyWorker(self.enforcer)
        self.xapp_server = self._serve(xapp_app(self.enforcer, self.worker))
        self.mediator.subscribe(
            10002, HttpXappSubscriber(self.xapp_server.base_url + "/a1/callback")
        )

        self.composer = PolicyComposer(
            cfg.rapp, mediator=HttpMediatorClient(self.mediator_server.base_url)
        )
        self.rapp_server = self._serve(rapp_app(self.composer))

        self.gateway = IntentGateway(
            translator or DeterministicTranslator(),
            bridge=HttpBridgeClient(self.bridge_server.base_url),
            rapp=HttpRappClient(self.rapp_server.base_url),
            mediator=HttpMediatorClient(self.mediator_server.base_url),
            booking=HttpBookingClient(self.booking_server.base_url),
            config=GatewayConfig(
                clarification_bound=cfg.clarification_bound,
                policy_wait_s=cfg.policy_wait_s,
            ),
        )
        self.gateway_server: Optional[ServerHandle] = None
        if serve_gateway:
            self.gateway_server = self._serve(gateway_app(self.gateway))

    def _serve(self, app) -> ServerHandle:
        handle = ServerHandle(app).start()
        self._servers.append(handle)
        return handle

    def urls(self) -> dict[str, str]:
        mapping = {
            "booking": self.booking_server.base_url,
            "tool-bridge": self.bridge_server.base_url,
            "a1-mediator": self.mediator_server.base_url,
            "xapp": self.xapp_server.base_url,
            "e2-node": self.node_server.base_url,
            "rapp": self.rapp_server.base_url,
        }
        if self.gateway_server is not None:
            mapping["gateway"] = self.gateway_server.base_url
        return mapping

    def __enter__(self) -> "HttpStack":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def close(self) -> None:
        self.worker.join()
        self.node.stop()
        self.termination.close()
        for handle in self._servers:
            handle.stop()
