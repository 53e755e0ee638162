"""HTTP surface and clients of the booking service.

POST /sessions validates and admits (201 / 400 / the exact 429 refusal
shape), DELETE /sessions/{id} releases, GET /sessions lists.
"""

from __future__ import annotations

import json
from typing import Optional

import httpx
from fastapi import FastAPI, Request

from orion.booking.core import BookingStore
from orion.domain import SessionBooking, SliceRequirements
from orion.errors import SchemaViolation, TransportError
from orion.httputil import install_error_handler, raise_for_response


def parse_requirements_payload(payload: bytes) -> SliceRequirements:
    try:
        data = json.loads(payload)
        if not isinstance(data, dict):
            raise ValueError("body must be a JSON object")
        return SliceRequirements.from_json(data)
    except (json.JSONDecodeError, ValueError) as exc:
        raise SchemaViolation(str(exc)) from exc


class InProcessBookingBackend:
    """Payload-level adapter used by the tool bridge when co-located.

    Keeps the last received payload so tests can assert the forwarded
    bytes match what the caller serialized.
    """

    def __init__(self, store: BookingStore):
        self.store = store
        self.last_payload: Optional[bytes] = None

    def create_session_payload(self, payload: bytes) -> SessionBooking:
        self.last_payload = payload
        return self.store.create_session(parse_requirements_payload(payload))


def create_app(store: BookingStore) -> FastAPI:
    app = FastAPI(title="slice-booking", docs_url=None, redoc_url=None)
    install_error_handler(app)
    app.state.store = store
    app.state.last_payload = None

    @app.post("/sessions", status_code=201)
    async def create_session(request: Request):
        payload = await request.body()
        app.state.last_payload = payload
        booking = store.create_session(parse_requirements_payload(payload))
        return booking.to_json()

    @app.delete("/sessions/{session_id}")
    def release_session(session_id: str):
        return store.release_session(session_id).to_json()

    @app.get("/sessions")
    def list_sessions():
        return [booking.to_json() for booking in store.list_sessions()]

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return store.get_session(session_id).to_json()

    @app.get("/health")
    def health():
        return {"activeSessions": store.active_count(),
                "threshold": store.capacity_threshold}

    return app


class HttpBookingClient:
    """Client for both the bridge executor and the gateway release path."""

    def __init__(self, base_url: str, timeout_s: float = 10.0):
        self._client = httpx.Client(base_url=base_url, timeout=timeout_s)

    def create_session_payload(self, payload: bytes) -> SessionBooking:
        try:
            response = self._client.post(
                "/sessions",
                content=payload,
                headers={"Content-Type": "application/json"},
            )
        except httpx.HTTPError as exc:
            raise TransportError(f"booking service unreachable: {exc}") from exc
        raise_for_response(response)
        return SessionBooking.from_json(response.json())

    def create_session(self, req: SliceRequirements) -> SessionBooking:
        from orion.jsonutil import canonical_bytes

        return self.create_session_payload(canonical_bytes(req.to_json()))

    def release_session(self, session_id: str) -> SessionBooking:
        try:
            response = self._client.delete(f"/sessions/{session_id}")
        except httpx.HTTPError as exc:
            raise TransportError(f"booking service unreachable: {exc}") from exc
        raise_for_response(response)
        return SessionBooking.from_json(response.json())

    def list_sessions(self) -> list[SessionBooking]:
        response = self._client.get("/sessions")
        raise_for_response(response)
        return [SessionBooking.from_json(item) for item in response.json()]

    def close(self) -> None:
        self._client.close()
