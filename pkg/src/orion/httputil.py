"""Shared HTTP plumbing: error mapping, SSE streaming, embedded servers.

Every service maps the same exception types to the same status codes,
and clients reconstruct the typed error from the response body, so a
pipeline wired over HTTP behaves exactly like the in-process one.
"""

from __future__ import annotations

import json
import queue
import threading
from typing import Iterator, Optional

import uvicorn
from fastapi import FastAPI
from fastapi.responses import JSONResponse

from orion import errors
from orion.errors import OrionError

_STATUS_BY_ERROR = {
    errors.SchemaViolation: 400,
    errors.NotFound: 404,
    errors.UnknownTool: 404,
    errors.UnknownPolicy: 404,
    errors.UnknownIntent: 404,
    errors.AlreadyReleased: 409,
    errors.DuplicatePolicyId: 409,
    errors.IllegalTransition: 409,
    errors.IllegalStatusTransition: 409,
    errors.NoPendingClarification: 409,
    errors.TranslationFailed: 422,
    errors.ValidationFailed: 422,
    errors.MissingThroughput: 422,
    errors.InvalidIntent: 422,
    errors.Infeasible: 422,
    errors.InvalidInput: 422,
    errors.InvalidConfig: 422,
    errors.AdmissionRefused: 429,
    errors.DownstreamError: 502,
    errors.MediatorUnavailable: 502,
    errors.TransportError: 502,
    errors.ServicesUnavailable: 503,
}

_ERROR_BY_NAME = {cls.__name__: cls for cls in _STATUS_BY_ERROR}


def error_response(exc: OrionError) -> JSONResponse:
    if isinstance(exc, errors.AdmissionRefused):
        # exact refusal shape of the booking contract
        return JSONResponse(
            status_code=429, content={"status": 429, "code": "TOO_MANY_REQUESTS"}
        )
    status = 500
    for cls, code in _STATUS_BY_ERROR.items():
        if isinstance(exc, cls):
            status = code
            break
    body = {"error": type(exc).__name__, "detail": str(exc)}
    record = getattr(exc, "record", None)
    if record is not None:
        body["intent"] = record.to_json()
    return JSONResponse(status_code=status, content=body)


def install_error_handler(app: FastAPI) -> None:
    @app.exception_handler(OrionError)
    async def _handle(request, exc: OrionError):  # noqa: ANN001
        return error_response(exc)


def raise_for_response(response) -> None:
    """Re-raise the typed error a service reported; no-op on 2xx."""
    if response.status_code < 400:
        return
    try:
        body = response.json()
    except (json.JSONDecodeError, ValueError):
        body = {}
    if response.status_code == 429 and body.get("code") == "TOO_MANY_REQUESTS":
        raise errors.AdmissionRefused("booking service at capacity (429)")
    name = body.get("error", "")
    detail = body.get("detail", response.text)
    cls = _ERROR_BY_NAME.get(name, errors.DownstreamError)
    raise cls(detail)


def sse_iterator(
    q: "queue.Queue[dict]", stop: Optional[threading.Event] = None,
    keepalive_s: float = 5.0,
) -> Iterator[str]:
    """Render queued events as server-sent events, with keepalive comments."""
    while stop is None or not stop.is_set():
        try:
            event = q.get(timeout=keepalive_s)
        except queue.Empty:
            yield ": keepalive\n\n"
            continue
        kind = event.get("kind", "message")
        payload = json.dumps(event, separators=(",", ":"), ensure_ascii=False)
        yield f"event: {kind}\ndata: {payload}\n\n"


def parse_sse_events(lines: Iterator[str]) -> Iterator[dict]:
    """Inverse of sse_iterator for clients and tests."""
    for line in lines:
        if line.startswith("data:"):
            yield json.loads(line[len("data:"):].strip())


class ServerHandle:
    """A uvicorn server on an ephemeral port, running on a daemon thread."""

    def __init__(self, app: FastAPI, host: str = "127.0.0.1", port: int = 0):
        self._config = uvicorn.Config(
            app, host=host, port=port, log_level="warning", access_log=False
        )
        self.server = uvicorn.Server(self._config)
        self._thread = threading.Thread(target=self.server.run, daemon=True)
        self.host = host
        self.port: Optional[int] = None

    def start(self, timeout: float = 10.0) -> "ServerHandle":
        self._thread.start()
        import time

        deadline = time.monotonic() + timeout
        while not self.server.started:
            if time.monotonic() > deadline:
                raise errors.ServicesUnavailable("embedded server failed to start")
            time.sleep(0.01)
        self.port = self.server.servers[0].sockets[0].getsockname()[1]
        return self

    @property
    def base_url(self) -> str:
        return f"http://{self.host}:{self.port}"

    def stop(self) -> None:
        self.server.should_exit = True
        self._thread.join(timeout=5)
