"""HTTP surface and clients of the policy composer."""

from __future__ import annotations

import httpx
from fastapi import FastAPI

from orion.domain import ClassifiedIntent
from orion.errors import MediatorUnavailable, SchemaViolation, UnknownPolicy
from orion.httputil import install_error_handler, raise_for_response
from orion.rapp.composer import PolicyComposer


class InProcessRappClient:
    """Gateway-side adapter when the composer runs co-located."""

    def __init__(self, composer: PolicyComposer):
        self.composer = composer

    def generate_policy(self, ci: ClassifiedIntent) -> dict:
        policy, notes = self.composer.generate(ci)
        receipt = self.composer.push_policy(policy)
        return {"policy": policy.to_json(), "receipt": receipt, "notes": notes}


def create_app(composer: PolicyComposer) -> FastAPI:
    app = FastAPI(title="rapp-composer", docs_url=None, redoc_url=None)
    install_error_handler(app)
    app.state.composer = composer

    @app.post("/generate-policy", status_code=201)
    def generate_policy(payload: dict):
        try:
            ci = ClassifiedIntent.from_json(payload)
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaViolation(f"bad classified intent: {exc}") from exc
        policy, notes = composer.generate(ci)
        receipt = composer.push_policy(policy)
        return {"policy": policy.to_json(), "receipt": receipt, "notes": notes}

    @app.get("/policies/{policy_id}")
    def get_generated(policy_id: str):
        policy = composer.get_generated(policy_id)
        if policy is None:
            raise UnknownPolicy(policy_id)
        return policy

    return app


class HttpRappClient:
    def __init__(self, base_url: str, timeout_s: float = 15.0):
        self._client = httpx.Client(base_url=base_url, timeout=timeout_s)

    def generate_policy(self, ci: ClassifiedIntent) -> dict:
        try:
            response = self._client.post("/generate-policy", json=ci.to_json())
        except httpx.HTTPError as exc:
            raise MediatorUnavailable(f"composer unreachable: {exc}") from exc
        raise_for_response(response)
        return response.json()

    def close(self) -> None:
        self._client.close()
