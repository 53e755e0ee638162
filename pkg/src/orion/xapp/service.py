"""HTTP surface of the xApp plus the subscriber adapters feeding it.

The mediator pushes policies to POST /a1/callback; handling is
asynchronous (the endpoint acknowledges immediately and the enforcement
loop reports status back to the mediator when done), mirroring how a
message-bus deployment behaves.
"""

from __future__ import annotations

import logging
import queue
import threading

from fastapi import FastAPI

from orion.httputil import install_error_handler
from orion.xapp.enforcer import PolicyEnforcer

logger = logging.getLogger(__name__)


class AsyncPolicyWorker:
    """Serialized policy-processing queue in front of an enforcer.

    Used both as the in-process mediator subscriber and as the backend
    of the HTTP callback endpoint: either way pushes are acknowledged
    first and enforced shortly after.
    """

    def __init__(self, enforcer: PolicyEnforcer):
        self.enforcer = enforcer
        self._queue: "queue.Queue[tuple]" = queue.Queue()
        self._thread = threading.Thread(
            target=self._drain, name="xapp-policy-worker", daemon=True
        )
        self._thread.start()

    def push(self, policy_json: dict) -> None:
        self._queue.put(("push", policy_json))

    def deleted(self, policytype_id: int, policy_id: str, policy_json: dict) -> None:
        self._queue.put(("delete", policytype_id, policy_id, policy_json))

    def _drain(self) -> None:
        while True:
            item = self._queue.get()
            try:
                if item[0] == "push":
                    self.enforcer.on_policy_json(item[1])
                else:
                    self.enforcer.on_policy_deleted(item[1], item[2], item[3])
            except Exception:  # noqa: BLE001 - the loop must survive anything
                logger.exception("policy worker step failed")
            finally:
                self._queue.task_done()

    def join(self) -> None:
        """Block until every queued push/deletion has been processed."""
        self._queue.join()


def create_app(enforcer: PolicyEnforcer, worker: AsyncPolicyWorker) -> FastAPI:
    app = FastAPI(title="xapp-enforcer", docs_url=None, redoc_url=None)
    install_error_handler(app)
    app.state.enforcer = enforcer

    @app.post("/a1/callback", status_code=202)
    def a1_callback(message: dict):
        if message.get("kind") == "delete":
            worker.deleted(
                int(message["policytypeId"]),
                str(message["policyId"]),
                message.get("policy") or {},
            )
        else:
            worker.push(message.get("policy") or message)
        return {"accepted": True}

    @app.get("/inventory")
    def inventory():
        return [
            {"nodeId": e.node_id, "nci": e.nci, "cell": e.cell.to_json()}
            for e in enforcer.inventory()
        ]

    @app.get("/quotas")
    def quotas():
        return [
            {"policyId": pid, "policytypeId": ptid, "quota": quota.to_json()}
            for (ptid, pid), quota in enforcer.quotas().items()
        ]

    return app
