"""HTTP surface and clients of the policy mediator.

Policies ride PUT/DELETE under /a1/policytypes/{ptid}/policies/{pid};
xApps register a callback with POST /a1/subscriptions and report via
POST /a1/status.
"""

from __future__ import annotations

import logging
import time
from typing import Optional

import httpx
from fastapi import FastAPI

from orion.errors import MediatorUnavailable, SchemaViolation
from orion.httputil import install_error_handler, raise_for_response
from orion.mediator.core import A1Mediator, PolicyState

logger = logging.getLogger(__name__)


class HttpXappSubscriber:
    """Mediator-side push adapter for a remote xApp callback URL."""

    def __init__(self, callback_url: str, timeout_s: float = 10.0):
        self.callback_url = callback_url.rstrip("/")
        self._client = httpx.Client(timeout=timeout_s)

    def push(self, policy_json: dict) -> None:
        self._client.post(
            self.callback_url, json={"kind": "push", "policy": policy_json}
        )

    def deleted(self, policytype_id: int, policy_id: str, policy_json: dict) -> None:
        self._client.post(
            self.callback_url,
            json={
                "kind": "delete",
                "policytypeId": policytype_id,
                "policyId": policy_id,
                "policy": policy_json,
            },
        )


def create_app(mediator: A1Mediator) -> FastAPI:
    app = FastAPI(title="a1-mediator", docs_url=None, redoc_url=None)
    install_error_handler(app)
    app.state.mediator = mediator

    @app.put("/a1/policytypes/{policytype_id}/policies/{policy_id}", status_code=201)
    def put_policy(policytype_id: int, policy_id: str, policy: dict):
        if (
            policy.get("policy_id") != policy_id
            or policy.get("policytype_id") != policytype_id
        ):
            raise SchemaViolation("path ids do not match the policy body")
        return mediator.put_policy(policy)

    @app.delete("/a1/policytypes/{policytype_id}/policies/{policy_id}")
    def delete_policy(policytype_id: int, policy_id: str):
        return mediator.delete_policy(policy_id, policytype_id).to_json()

    @app.get("/a1/policytypes/{policytype_id}/policies/{policy_id}/status")
    def get_status(policytype_id: int, policy_id: str):
        return mediator.get_status(policy_id, policytype_id)

    @app.get("/a1/policytypes/{policytype_id}/policies/{policy_id}")
    def get_policy(policytype_id: int, policy_id: str):
        return mediator.get_policy(policy_id, policytype_id)

    @app.get("/a1/policies")
    def list_policies():
        return mediator.list_policies()

    @app.post("/a1/subscriptions", status_code=201)
    def subscribe(subscription: dict):
        try:
            policytype_id = int(subscription["policytypeId"])
            callback_url = subscription["callbackUrl"]
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaViolation(f"bad subscription: {exc}") from exc
        mediator.subscribe(policytype_id, HttpXappSubscriber(callback_url))
        return {"policytypeId": policytype_id, "callbackUrl": callback_url}

    @app.post("/a1/status")
    def report_status(report: dict):
        try:
            state = PolicyState(report["state"])
            status = mediator.report_status(
                policy_id=report["policyId"],
                policytype_id=int(report["policytypeId"]),
                state=state,
                detail=report.get("detail"),
                timings=report.get("timings"),
                quota=report.get("quota"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaViolation(f"bad status report: {exc}") from exc
        return status.to_json()

    return app


class HttpMediatorClient:
    """Used by the composer (put), the gateway (delete/status wait) and
    the xApp (status reports)."""

    def __init__(self, base_url: str, timeout_s: float = 10.0):
        self._client = httpx.Client(base_url=base_url, timeout=timeout_s)

    def put_policy(self, policy_json: dict) -> dict:
        path = (
            f"/a1/policytypes/{policy_json.get('policytype_id')}"
            f"/policies/{policy_json.get('policy_id')}"
        )
        try:
            response = self._client.put(path, json=policy_json)
        except httpx.HTTPError as exc:
            raise MediatorUnavailable(str(exc)) from exc
        raise_for_response(response)
        return response.json()

    def delete_policy(self, policy_id: str, policytype_id: int) -> dict:
        try:
            response = self._client.delete(
                f"/a1/policytypes/{policytype_id}/policies/{policy_id}"
            )
        except httpx.HTTPError as exc:
            raise MediatorUnavailable(str(exc)) from exc
        raise_for_response(response)
        return response.json()

    def get_status(self, policy_id: str, policytype_id: int) -> dict:
        response = self._client.get(
            f"/a1/policytypes/{policytype_id}/policies/{policy_id}/status"
        )
        raise_for_response(response)
        return response.json()

    def wait_for_terminal_status(
        self, policy_id: str, policytype_id: int, timeout: float = 5.0
    ) -> Optional[dict]:
        deadline = time.monotonic() + timeout
        while time.monotonic() < deadline:
            try:
                status = self.get_status(policy_id, policytype_id)
            except Exception:  # noqa: BLE001 - vanished policies end the wait
                return None
            if status.get("state") != PolicyState.CREATED.value:
                return status
            time.sleep(0.02)
        return None

    def report_status(self, report: dict) -> dict:
        try:
            response = self._client.post("/a1/status", json=report)
        except httpx.HTTPError as exc:
            raise MediatorUnavailable(str(exc)) from exc
        raise_for_response(response)
        return response.json()

    def close(self) -> None:
        self._client.close()
