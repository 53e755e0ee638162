"""Tool protocol server: advertise tools, execute them, stream results.

The registry is static after startup (one `create_session` tool in the
shipped configuration, with the `network_slice_booking` alias accepted on
invoke).  Arguments are validated against the descriptor schema before
anything is forwarded; the forwarded payload is the canonical
serialization of the received arguments, byte for byte.
"""

from __future__ import annotations

import queue
import threading
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Mapping, Optional, Protocol

from orion.domain import SessionBooking, SliceRequirements
from orion.errors import (
    AdmissionRefused,
    DownstreamError,
    SchemaViolation,
    UnknownTool,
)
from orion.jsonutil import camel, canonical_bytes

_INT_TYPE = "integer"
_NUM_TYPE = "number"
_STR_TYPE = "string"


@dataclass(frozen=True)
class FieldSpec:
    name: str
    type: str
    nullable: bool = True

    def to_json(self) -> dict[str, Any]:
        return {"name": self.name, "type": self.type, "nullable": self.nullable}

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "FieldSpec":
        return cls(data["name"], data["type"], data.get("nullable", True))


@dataclass(frozen=True)
class ToolDescriptor:
    name: str
    description: str
    argument_schema: tuple[FieldSpec, ...]

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "description": self.description,
            "argumentSchema": [spec.to_json() for spec in self.argument_schema],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "ToolDescriptor":
        return cls(
            data["name"],
            data["description"],
            tuple(FieldSpec.from_json(f) for f in data["argumentSchema"]),
        )


@dataclass(frozen=True)
class ToolCall:
    call_id: str
    tool_name: str
    arguments: dict[str, Any]
    conversation_id: Optional[str] = None

    def to_json(self) -> dict[str, Any]:
        return {
            "callId": self.call_id,
            "toolName": self.tool_name,
            "arguments": self.arguments,
            "conversationId": self.conversation_id,
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "ToolCall":
        return cls(
            call_id=data["callId"],
            tool_name=data["toolName"],
            arguments=dict(data["arguments"]),
            conversation_id=data.get("conversationId"),
        )


class ToolOutcome(Enum):
    OK = "OK"
    REJECTED = "REJECTED"
    ERROR = "ERROR"


@dataclass(frozen=True)
class ToolResult:
    call_id: str
    outcome: ToolOutcome
    payload: dict[str, Any]

    def to_json(self) -> dict[str, Any]:
        return {
            "callId": self.call_id,
            "outcome": self.outcome.value,
            "payload": self.payload,
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "ToolResult":
        return cls(data["callId"], ToolOutcome(data["outcome"]), data["payload"])

    @property
    def booking(self) -> SessionBooking:
        if self.outcome is not ToolOutcome.OK:
            raise ValueError("only OK results carry a booking")
        return SessionBooking.from_json(self.payload)


# executor contract: receives the canonical argument bytes, returns the
# booking; raises AdmissionRefused / SchemaViolation / TransportError
Executor = Callable[[bytes], SessionBooking]


class BookingBackend(Protocol):
    def create_session_payload(self, payload: bytes) -> SessionBooking: ...


def create_session_descriptor() -> ToolDescriptor:
    specs = []
    for name in SliceRequirements.FIELD_NAMES:
        if name == "area_of_service":
            kind = _STR_TYPE
        elif name in (
            "duration_s",
            "device_count",
            "max_dl_thpt_per_device_bps",
            "max_ul_thpt_per_device_bps",
            "max_dl_thpt_per_slice_bps",
            "max_ul_thpt_per_slice_bps",
        ):
            kind = _INT_TYPE
        else:
            kind = _NUM_TYPE
        specs.append(FieldSpec(camel(name), kind, nullable=True))
    return ToolDescriptor(
        name="create_session",
        description=(
            "Book a network slice session. Every argument is nullable; state "
            "only what the intent explicitly specifies."
        ),
        argument_schema=tuple(specs),
    )


def booking_executor(backend: BookingBackend) -> Executor:
    def execute(payload: bytes) -> SessionBooking:
        return backend.create_session_payload(payload)

    return execute


@dataclass
class _Registration:
    descriptor: ToolDescriptor
    executor: Executor
    aliases: tuple[str, ...] = ()


class ToolServer:
    """Registry plus executor; also the in-process client."""

    def __init__(self):
        self._tools: list[_Registration] = []
        self._streams: dict[str, list[queue.Queue]] = {}
        self._lock = threading.Lock()

    def register(
        self,
        descriptor: ToolDescriptor,
        executor: Executor,
        aliases: tuple[str, ...] = (),
    ) -> None:
        if any(reg.descriptor.name == descriptor.name for reg in self._tools):
            raise ValueError(f"tool {descriptor.name} already registered")
        self._tools.append(_Registration(descriptor, executor, aliases))

    # -- protocol operations ---------------------------------------------

    def list_tools(self) -> list[ToolDescriptor]:
        return [reg.descriptor for reg in self._tools]

    def invoke_tool(self, call: ToolCall) -> ToolResult:
        registration = self._resolve(call.tool_name)
        self._check_schema(registration.descriptor, call.arguments)
        payload = canonical_bytes(call.arguments)
        try:
            booking = registration.executor(payload)
            result = ToolResult(call.call_id, ToolOutcome.OK, booking.to_json())
        except AdmissionRefused as exc:
            result = ToolResult(
                call.call_id,
                ToolOutcome.REJECTED,
                {"status": 429, "code": "TOO_MANY_REQUESTS", "detail": str(exc)},
            )
        except SchemaViolation as exc:
            result = ToolResult(
                call.call_id,
                ToolOutcome.ERROR,
                {"status": 400, "code": "SCHEMA_VIOLATION", "detail": str(exc)},
            )
        except DownstreamError as exc:
            result = ToolResult(
                call.call_id,
                ToolOutcome.ERROR,
                {"status": 502, "code": "DOWNSTREAM_ERROR", "detail": str(exc)},
            )
        self._publish(call.conversation_id, result)
        return result

    def subscribe_events(self, conversation_id: str) -> "queue.Queue[dict]":
        """Queue of event dicts for one conversation (single reader)."""
        q: queue.Queue = queue.Queue()
        with self._lock:
            self._streams.setdefault(conversation_id, []).append(q)
        return q

    def unsubscribe(self, conversation_id: str, q: "queue.Queue[dict]") -> None:
        with self._lock:
            listeners = self._streams.get(conversation_id, [])
            if q in listeners:
                listeners.remove(q)

    # -- internals ----------------------------------------------------------

    def _resolve(self, tool_name: str) -> _Registration:
        for reg in self._tools:
            if tool_name == reg.descriptor.name or tool_name in reg.aliases:
                return reg
        raise UnknownTool(tool_name)

    @staticmethod
    def _check_schema(descriptor: ToolDescriptor, arguments: Mapping[str, Any]) -> None:
        specs = {spec.name: spec for spec in descriptor.argument_schema}
        for key, value in arguments.items():
            spec = specs.get(key)
            if spec is None:
                raise SchemaViolation(f"unknown argument {key!r}")
            if value is None:
                if not spec.nullable:
                    raise SchemaViolation(f"argument {key!r} is not nullable")
                continue
            if spec.type == _INT_TYPE:
                ok = isinstance(value, int) and not isinstance(value, bool)
            elif spec.type == _NUM_TYPE:
                ok = isinstance(value, (int, float)) and not isinstance(value, bool)
            else:
                ok = isinstance(value, str)
            if not ok:
                raise SchemaViolation(f"argument {key!r} must be a {spec.type}")
        for spec in specs.values():
            if not spec.nullable and spec.name not in arguments:
                raise SchemaViolation(f"argument {spec.name!r} is required")

    def _publish(self, conversation_id: Optional[str], result: ToolResult) -> None:
        if conversation_id is None:
            return
        event = {"kind": "tool_result", "callId": result.call_id,
                 "result": result.to_json()}
        with self._lock:
            listeners = list(self._streams.get(conversation_id, ()))
        for q in listeners:
            q.put(event)
