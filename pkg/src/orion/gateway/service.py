"""HTTP surface of the intent gateway.

POST /intent runs the pipeline (the response carries the intent record,
also on failure); clarifications and lifecycle commands ride their own
endpoints; GET /stream pushes state changes, clarifications, policy
statuses, quota updates and timings as server-sent events.
"""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import StreamingResponse

from orion.domain import LifecycleEvent
from orion.errors import SchemaViolation
from orion.gateway.pipeline import IntentGateway
from orion.httputil import install_error_handler, sse_iterator


def create_app(gateway: IntentGateway) -> FastAPI:
    app = FastAPI(title="intent-gateway", docs_url=None, redoc_url=None)
    install_error_handler(app)
    app.state.gateway = gateway

    @app.post("/intent", status_code=201)
    def submit_intent(payload: dict):
        text = payload.get("text", "")
        record = gateway.submit_intent(
            text,
            conversation_id=payload.get("conversationId"),
            intent_key=payload.get("intentKey"),
        )
        return record.to_json()

    @app.post("/intent/{intent_id}/clarify")
    def clarify(intent_id: str, payload: dict):
        record = gateway.get_intent(intent_id)
        answer = payload.get("answer", "")
        return gateway.answer_clarification(record.conversation_id, answer).to_json()

    @app.post("/intent/{intent_id}/lifecycle")
    def lifecycle(intent_id: str, payload: dict):
        try:
            event = LifecycleEvent(payload.get("event", ""))
        except ValueError as exc:
            raise SchemaViolation(f"unknown lifecycle event: {exc}") from exc
        record = gateway.lifecycle_command(intent_id, event, text=payload.get("text"))
        return record.to_json()

    @app.get("/intent/{intent_id}")
    def get_intent(intent_id: str):
        return gateway.get_intent(intent_id).to_json()

    @app.get("/intents")
    def list_intents():
        return [record.to_json() for record in gateway.list_intents()]

    @app.get("/intent/{intent_id}/conversation")
    def get_conversation(intent_id: str):
        record = gateway.get_intent(intent_id)
        return gateway.get_conversation(record.conversation_id).to_json()

    @app.get("/stream")
    def stream():
        q = gateway.subscribe()
        return StreamingResponse(sse_iterator(q), media_type="text/event-stream")

    return app
