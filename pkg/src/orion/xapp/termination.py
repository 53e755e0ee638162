"""E2 termination: the server side of the framed-stream protocol.

Accepts node connections, completes the setup exchange, then routes
control acknowledgements / failures back to the waiting sender by
transaction id.  One in-flight control transaction per node.
"""

from __future__ import annotations

import logging
import socket
import threading
from dataclasses import dataclass, field

from orion.e2 import (
    CAUSE_MALFORMED,
    ControlPdu,
    E2SetupRequest,
    E2SetupResponse,
    FramedConnection,
    FunctionAdvert,
    RicControlAcknowledge,
    RicControlFailure,
    RicControlRequest,
)
from orion.errors import ConnectionLost, TransportError

logger = logging.getLogger(__name__)


@dataclass
class _NodeLink:
    node_id: str
    conn: FramedConnection
    functions: tuple[FunctionAdvert, ...]
    send_lock: threading.Lock = field(default_factory=threading.Lock)
    pending: dict[int, "threading.Event"] = field(default_factory=dict)
    responses: dict[int, ControlPdu] = field(default_factory=dict)
    alive: bool = True


class E2Termination:
    """Listens for E2 nodes and brokers control transactions to them."""

    def __init__(self, host: str = "127.0.0.1", port: int = 0):
        self._server = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        self._server.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        self._server.bind((host, port))
        self._server.listen(8)
        self.host, self.port = self._server.getsockname()
        self._links: dict[str, _NodeLink] = {}
        self._lock = threading.Lock()
        self._stop = threading.Event()
        self._node_seen = threading.Condition(self._lock)
        self._accept_thread = threading.Thread(
            target=self._accept_loop, name="e2term-accept", daemon=True
        )
        self._accept_thread.start()

    # -- connection handling --------------------------------------------

    def _accept_loop(self) -> None:
        self._server.settimeout(0.5)
        while not self._stop.is_set():
            try:
                sock, addr = self._server.accept()
            except socket.timeout:
                continue
            except OSError:
                return
            threading.Thread(
                target=self._serve_connection,
                args=(FramedConnection(sock), addr),
                daemon=True,
            ).start()

    def _serve_connection(self, conn: FramedConnection, addr) -> None:
        link: _NodeLink | None = None
        try:
            while not self._stop.is_set():
                try:
                    pdu = conn.recv(timeout=0.5)
                except TimeoutError:
                    continue
                if isinstance(pdu, E2SetupRequest):
                    if link is not None:
                        conn.send(
                            RicControlFailure(
                                pdu.transaction_id,
                                CAUSE_MALFORMED,
                                "setup already completed",
                            )
                        )
                        continue
                    link = _NodeLink(pdu.node_id, conn, pdu.functions)
                    with self._lock:
                        self._links[pdu.node_id] = link
                        self._node_seen.notify_all()
                    conn.send(E2SetupResponse(pdu.transaction_id, pdu.node_id))
                    logger.info("node %s connected from %s", pdu.node_id, addr)
                elif link is None:
                    conn.send(
                        RicControlFailure(
                            pdu.transaction_id, CAUSE_MALFORMED, "setup required"
                        )
                    )
                elif isinstance(pdu, (RicControlAcknowledge, RicControlFailure)):
                    event = link.pending.pop(pdu.transaction_id, None)
                    if event is None:
                        logger.warning(
                            "unmatched response tx=%s from %s",
                            pdu.transaction_id,
                            link.node_id,
                        )
                        continue
                    link.responses[pdu.transaction_id] = pdu
                    event.set()
                else:
                    conn.send(
                        RicControlFailure(
                            pdu.transaction_id, CAUSE_MALFORMED, "unexpected pdu"
                        )
                    )
        except ConnectionLost:
            pass
        finally:
            if link is not None:
                with self._lock:
                    link.alive = False
                    self._links.pop(link.node_id, None)
                for event in link.pending.values():
                    event.set()
            conn.close()

    # -- public surface ---------------------------------------------------

    def node_ids(self) -> list[str]:
        with self._lock:
            return list(self._links)

    def wait_for_node(self, node_id: str, timeout: float = 5.0) -> bool:
        with self._node_seen:
            return self._node_seen.wait_for(
                lambda: node_id in self._links, timeout=timeout
            )

    def send_control(
        self, node_id: str, request: RicControlRequest, timeout: float = 2.0
    ) -> ControlPdu:
        """Send one control request and wait for its id-matched response.

        Raises TransportError if the node is gone, TimeoutError if no
        response arrives in time.
        """
        with self._lock:
            link = self._links.get(node_id)
        if link is None:
            raise TransportError(f"node {node_id} not connected")
        with link.send_lock:  # one in-flight transaction per node
            event = threading.Event()
            link.pending[request.transaction_id] = event
            try:
                link.conn.send(request)
            except (ConnectionLost, OSError) as exc:
                link.pending.pop(request.transaction_id, None)
                raise TransportError(str(exc)) from exc
            if not event.wait(timeout):
                link.pending.pop(request.transaction_id, None)
                raise TimeoutError(
                    f"no control response from {node_id} within {timeout}s"
                )
            response = link.responses.pop(request.transaction_id, None)
            if response is None:
                raise TransportError(f"node {node_id} disconnected mid-transaction")
            return response

    def close(self) -> None:
        self._stop.set()
        try:
            self._server.close()
        except OSError:
            pass
        with self._lock:
            links = list(self._links.values())
        for link in links:
            link.conn.close()
