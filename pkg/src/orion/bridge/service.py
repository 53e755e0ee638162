"""HTTP surface and client of the tool bridge.

GET /tools lists descriptors, POST /tools/invoke executes one call,
GET /events/{conversation_id} streams results as server-sent events.
"""

from __future__ import annotations

import json
import queue
import threading
from typing import Iterator

import httpx
from fastapi import FastAPI
from fastapi.responses import StreamingResponse

from orion.bridge.core import ToolCall, ToolDescriptor, ToolResult, ToolServer
from orion.errors import SchemaViolation, TransportError
from orion.httputil import install_error_handler, raise_for_response, sse_iterator


def create_app(server: ToolServer) -> FastAPI:
    app = FastAPI(title="tool-bridge", docs_url=None, redoc_url=None)
    install_error_handler(app)
    app.state.server = server

    @app.get("/tools")
    def list_tools():
        return [descriptor.to_json() for descriptor in server.list_tools()]

    @app.post("/tools/invoke")
    def invoke(call: dict):
        try:
            parsed = ToolCall.from_json(call)
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaViolation(f"malformed tool call: {exc}") from exc
        return server.invoke_tool(parsed).to_json()

    @app.get("/events/{conversation_id}")
    def events(conversation_id: str):
        q = server.subscribe_events(conversation_id)
        return StreamingResponse(
            sse_iterator(q), media_type="text/event-stream"
        )

    return app


class HttpBridgeClient:
    def __init__(self, base_url: str, timeout_s: float = 15.0):
        self.base_url = base_url
        self._client = httpx.Client(base_url=base_url, timeout=timeout_s)

    def list_tools(self) -> list[ToolDescriptor]:
        try:
            response = self._client.get("/tools")
        except httpx.HTTPError as exc:
            raise TransportError(f"tool bridge unreachable: {exc}") from exc
        raise_for_response(response)
        return [ToolDescriptor.from_json(item) for item in response.json()]

    def invoke_tool(self, call: ToolCall) -> ToolResult:
        try:
            response = self._client.post("/tools/invoke", json=call.to_json())
        except httpx.HTTPError as exc:
            raise TransportError(f"tool bridge unreachable: {exc}") from exc
        raise_for_response(response)
        return ToolResult.from_json(response.json())

    def subscribe_events(self, conversation_id: str) -> "queue.Queue[dict]":
        """Long-lived SSE subscription pumped into a queue by a reader thread."""
        q: queue.Queue = queue.Queue()

        def pump() -> None:
            try:
                with self._stream(conversation_id) as lines:
                    for event in lines:
                        q.put(event)
            except (httpx.HTTPError, TransportError):
                q.put({"kind": "stream_lost"})

        threading.Thread(target=pump, daemon=True).start()
        return q

    def _stream(self, conversation_id: str):
        client = httpx.Client(base_url=self.base_url, timeout=None)

        class _Lines:
            def __enter__(self_inner) -> Iterator[dict]:
                self_inner._cm = client.stream(
                    "GET", f"/events/{conversation_id}"
                )
                response = self_inner._cm.__enter__()

                def generate():
                    for line in response.iter_lines():
                        if line.startswith("data:"):
                            yield json.loads(line[len("data:"):].strip())

                return generate()

            def __exit__(self_inner, *exc) -> None:
                self_inner._cm.__exit__(*exc)
                client.close()

        return _Lines()

    def close(self) -> None:
        self._client.close()
