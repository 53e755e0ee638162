"""Intent gateway: orchestrates the two-phase translation flow.

One submission runs: translator tool selection, tool invocation through
the bridge, slice classification, validation, policy generation at the
composer, then a wait for the enforcement status -- recording per-stage
timings along the way.  Clarifications suspend the run (bounded rounds);
lifecycle commands drive the record through the state machine with the
agreed side effects (terminate releases the booking and deletes the
policy; suspend withholds the policy downstream; resume re-pushes it).
"""

from __future__ import annotations

import dataclasses
import logging
import queue
import threading
import time
import uuid
from dataclasses import dataclass
from typing import Optional, Protocol

from orion.bridge import ToolCall, ToolDescriptor, ToolResult
from orion.bridge.core import ToolOutcome
from orion.domain import (
    ClassifiedIntent,
    IntentRecord,
    LifecycleEvent,
    LifecycleState,
    PrbQuota,
    SliceRequirements,
    lifecycle_transition,
    validate_requirements,
)
from orion.errors import (
    DownstreamError,
    NoPendingClarification,
    NotFound,
    AlreadyReleased,
    OrionError,
    TranslationFailed,
    UnknownIntent,
    UnknownPolicy,
    ValidationFailed,
)
from orion.gateway.translator import Conversation, load_system_prompt
from orion.jsonutil import canonical_dumps

logger = logging.getLogger(__name__)


class BridgeClient(Protocol):
    def list_tools(self) -> list[ToolDescriptor]: ...

    def invoke_tool(self, call: ToolCall) -> ToolResult: ...


class RappClient(Protocol):
    def generate_policy(self, ci: ClassifiedIntent) -> dict:
        """Returns {"policy": .., "receipt": .., "notes": [..]}; raises
        DownstreamError on composer/mediator failure."""
        ...


class MediatorClient(Protocol):
    def put_policy(self, policy_json: dict) -> dict: ...

    def delete_policy(self, policy_id: str, policytype_id: int) -> dict: ...

    def wait_for_terminal_status(
        self, policy_id: str, policytype_id: int, timeout: float
    ) -> Optional[dict]: ...


class BookingClient(Protocol):
    def release_session(self, session_id: str): ...


@dataclass
class GatewayConfig:
    clarification_bound: int = 2
    policy_wait_s: float = 5.0


class IntentGateway:
    def __init__(
        self,
        translator,
        bridge: BridgeClient,
        rapp: RappClient,
        mediator: MediatorClient,
        booking: BookingClient,
        config: Optional[GatewayConfig] = None,
    ):
        self.translator = translator
        self.bridge = bridge
        self.rapp = rapp
        self.mediator = mediator
        self.booking = booking
        self.config = config or GatewayConfig()
        self._records: dict[str, IntentRecord] = {}
        self._conversations: dict[str, Conversation] = {}
        self._conversation_locks: dict[str, threading.Lock] = {}
        self._intent_of_conversation: dict[str, str] = {}
        self._policies: dict[str, dict] = {}
        self._tool_calls: dict[str, list[ToolCall]] = {}
        self._registry_lock = threading.Lock()
        self._subscribers: list[queue.Queue] = []
        self._system_prompt = load_system_prompt()

    # -- event stream ------------------------------------------------------

    def subscribe(self) -> "queue.Queue[dict]":
        q: queue.Queue = queue.Queue()
        with self._registry_lock:
            self._subscribers.append(q)
        return q

    def unsubscribe(self, q: "queue.Queue[dict]") -> None:
        with self._registry_lock:
            if q in self._subscribers:
                self._subscribers.remove(q)

    def _emit(self, kind: str, payload: dict) -> None:
        event = {"kind": kind, "payload": payload, "ts": time.time()}
        with self._registry_lock:
            subscribers = list(self._subscribers)
        for q in subscribers:
            q.put(event)

    # -- registry helpers -----------------------------------------------

    def _store(self, record: IntentRecord, emit: bool = True) -> IntentRecord:
        with self._registry_lock:
            self._records[record.intent_id] = record
        if emit:
            self._emit("state_change", record.to_json())
        return record

    def get_intent(self, intent_id: str) -> IntentRecord:
        with self._registry_lock:
            record = self._records.get(intent_id)
        if record is None:
            raise UnknownIntent(intent_id)
        return record

    def list_intents(self) -> list[IntentRecord]:
        with self._registry_lock:
            return list(self._records.values())

    def get_conversation(self, conversation_id: str) -> Conversation:
        conversation = self._conversations.get(conversation_id)
        if conversation is None:
            raise UnknownIntent(f"conversation {conversation_id}")
        return conversation

    def observed_tool_calls(self, intent_id: str) -> list[ToolCall]:
        return list(self._tool_calls.get(intent_id, ()))

    def _conversation_lock(self, conversation_id: str) -> threading.Lock:
        with self._registry_lock:
            return self._conversation_locks.setdefault(
                conversation_id, threading.Lock()
            )

    # -- operations ---------------------------------------------------------

    def submit_intent(
        self,
        text: str,
        conversation_id: Optional[str] = None,
        intent_key: Optional[str] = None,
    ) -> IntentRecord:
        if not text or not text.strip():
            raise ValidationFailed("intent text must be non-empty")
        conversation_id = conversation_id or uuid.uuid4().hex[:12]
        with self._conversation_lock(conversation_id):
            conversation = self._conversations.get(conversation_id)
            if conversation is None:
                conversation = Conversation(
                    conversation_id=conversation_id, intent_key=intent_key
                )
                conversation.append("system", self._system_prompt)
                self._conversations[conversation_id] = conversation
            elif conversation.pending_clarification is not None:
                raise ValidationFailed(
                    "conversation has a pending clarification; answer it instead"
                )
            if intent_key:
                conversation.intent_key = intent_key
            conversation.append("operator", text)
            record = IntentRecord(
                intent_id=intent_key or f"intent-{uuid.uuid4().hex[:10]}",
                text=text,
                state=LifecycleState.CREATED,
                conversation_id=conversation_id,
            )
            self._intent_of_conversation[conversation_id] = record.intent_id
            self._store(record)
            return self._run_pipeline(record, conversation)

    def answer_clarification(self, conversation_id: str, answer: str) -> IntentRecord:
        with self._conversation_lock(conversation_id):
            conversation = self._conversations.get(conversation_id)
            if conversation is None or conversation.pending_clarification is None:
                raise NoPendingClarification(conversation_id)
            conversation.pending_clarification = None
            conversation.append("operator", answer)
            intent_id = self._intent_of_conversation[conversation_id]
            record = self.get_intent(intent_id)
            record = self._store(
                dataclasses.replace(record, pending_clarification=None), emit=False
            )
            return self._run_pipeline(record, conversation)

    def lifecycle_command(
        self, intent_id: str, event: LifecycleEvent, text: Optional[str] = None
    ) -> IntentRecord:
        record = self.get_intent(intent_id)
        conversation = self._conversations[record.conversation_id]
        with self._conversation_lock(record.conversation_id):
            new_state = lifecycle_transition(record.state, event)

            if event is LifecycleEvent.TERMINATE:
                self._teardown(record)
                record = dataclasses.replace(
                    record, state=new_state, quota=None, policy_state=None
                )
                return self._store(record)

            if event is LifecycleEvent.SUSPEND:
                self._withdraw_policy(record)
                record = dataclasses.replace(
                    record, state=new_state, quota=None, policy_state="WITHHELD"
                )
                return self._store(record)

            if event is LifecycleEvent.RESUME:
                record = dataclasses.replace(record, state=new_state)
                self._store(record)
                return self._repush(record)

            if event is LifecycleEvent.MODIFY:
                if text:
                    conversation.append("operator", text)
                    record = dataclasses.replace(record, text=record.text)
                record = dataclasses.replace(record, state=new_state)
                return self._store(record)

            if event is LifecycleEvent.ACTIVATE:
                if record.state is LifecycleState.MODIFIED:
                    # full re-translation over the amended conversation
                    self._teardown(record)
                    record = dataclasses.replace(
                        record,
                        session_id=None,
                        policy_id=None,
                        policytype_id=None,
                        quota=None,
                        policy_state=None,
                        failure=None,
                    )
                    self._store(record, emit=False)
                    return self._run_pipeline(record, conversation)
                if record.policy_id is None:
                    self._store(record, emit=False)
                    return self._run_pipeline(record, conversation)
                record = dataclasses.replace(record, state=new_state)
                return self._store(record)

            record = dataclasses.replace(record, state=new_state)
            return self._store(record)

    # -- pipeline ------------------------------------------------------------

    def _fail(self, record: IntentRecord, exc: OrionError) -> None:
        record = self._store(dataclasses.replace(record, failure=str(exc)))
        exc.record = record  # type: ignore[attr-defined]
        raise exc

    def _run_pipeline(
        self, record: IntentRecord, conversation: Conversation
    ) -> IntentRecord:
        timings: dict[str, float] = {}
        translate_ms = 0.0

        t0 = time.perf_counter()
        try:
            descriptors = self.bridge.list_tools()
            decision = self.translator.propose(conversation, descriptors)
        except TranslationFailed as exc:
            self._fail(record, exc)
        except OrionError as exc:
            self._fail(record, TranslationFailed(f"{self.translator.name}: {exc}"))
        translate_ms += (time.perf_counter() - t0) * 1000.0

        if decision.refusal is not None:
            self._fail(
                record, TranslationFailed(f"translator refused: {decision.refusal}")
            )
        if decision.clarification is not None:
            return self._ask_clarification(record, conversation, decision.clarification)

        call = decision.tool_call
        conversation.append("translator", canonical_dumps(call.to_json()))
        try:
            requirements = SliceRequirements.from_json(call.arguments)
        except ValueError as exc:
            self._fail(record, TranslationFailed(f"unparseable tool arguments: {exc}"))
        violations = validate_requirements(requirements)
        if violations:
            return self._ask_clarification(
                record,
                conversation,
                "The stated requirements are inconsistent: "
                + "; ".join(violations)
                + ". Please restate them.",
            )

        self._tool_calls.setdefault(record.intent_id, []).append(call)
        t1 = time.perf_counter()
        try:
            result = self.bridge.invoke_tool(call)
        except OrionError as exc:
            self._fail(record, DownstreamError(f"tool invocation failed: {exc}", exc))
        timings["smo_mcp_tool_execution"] = (time.perf_counter() - t1) * 1000.0
        conversation.append("tool", canonical_dumps(result.to_json()))

        if result.outcome is ToolOutcome.REJECTED:
            self._fail(
                record,
                DownstreamError(
                    f"booking admission refused: {result.payload.get('code')}"
                ),
            )
        if result.outcome is ToolOutcome.ERROR:
            self._fail(
                record, DownstreamError(f"booking error: {result.payload}")
            )
        booking = result.booking
        record = self._store(
            dataclasses.replace(record, session_id=booking.session_id), emit=False
        )

        t2 = time.perf_counter()
        try:
            slice_type = self.translator.classify(conversation, booking)
        except TranslationFailed as exc:
            self._fail(record, exc)
        translate_ms += (time.perf_counter() - t2) * 1000.0
        record = self._store(
            dataclasses.replace(record, slice_type=slice_type), emit=False
        )

        ci = ClassifiedIntent(
            requirements=booking.requirements,
            slice_type=slice_type,
            session_id=booking.session_id,
        )
        violations = validate_requirements(ci.requirements)
        if violations:
            self._fail(record, ValidationFailed("; ".join(violations)))

        t3 = time.perf_counter()
        try:
            composed = self.rapp.generate_policy(ci)
        except OrionError as exc:
            self._fail(record, DownstreamError(f"policy generation failed: {exc}", exc))
        translate_ms += (time.perf_counter() - t3) * 1000.0

        policy_json = composed["policy"]
        receipt = composed.get("receipt") or {}
        timings["smo_intent_to_policy"] = translate_ms
        if "processingMs" in receipt:
            timings["a1_mediator"] = float(receipt["processingMs"])
        record = dataclasses.replace(
            record,
            policy_id=policy_json["policy_id"],
            policytype_id=policy_json["policytype_id"],
            policy_state="CREATED",
        )
        self._policies[record.intent_id] = policy_json
        self._store(record, emit=False)

        record = self._await_enforcement(record, timings)

        new_state = lifecycle_transition(record.state, LifecycleEvent.ACTIVATE)
        record = self._store(dataclasses.replace(record, state=new_state))
        return record

    def _ask_clarification(
        self, record: IntentRecord, conversation: Conversation, question: str
    ) -> IntentRecord:
        if conversation.clarification_rounds >= self.config.clarification_bound:
            self._fail(
                record,
                TranslationFailed(
                    f"clarification bound of {self.config.clarification_bound} "
                    "rounds exhausted"
                ),
            )
        conversation.clarification_rounds += 1
        conversation.pending_clarification = question
        conversation.append("translator", question)
        record = self._store(
            dataclasses.replace(record, pending_clarification=question), emit=False
        )
        self._emit(
            "clarification",
            {"intentId": record.intent_id, "question": question,
             "conversationId": conversation.conversation_id},
        )
        return record

    def _await_enforcement(
        self, record: IntentRecord, timings: dict[str, float]
    ) -> IntentRecord:
        status = None
        if record.policy_id is not None:
            status = self.mediator.wait_for_terminal_status(
                record.policy_id,
                record.policytype_id,
                timeout=self.config.policy_wait_s,
            )
        quota = record.quota
        policy_state = record.policy_state
        if status is not None:
            policy_state = status.get("state")
            for stage, value in (status.get("timings") or {}).items():
                timings[stage] = float(value)
            if status.get("quota"):
                quota = PrbQuota.from_json(status["quota"])
            self._emit("policy_status", status)
            if quota is not None and policy_state == "ENFORCED":
                self._emit(
                    "quota_update",
                    {"intentId": record.intent_id, "quota": quota.to_json()},
                )
        record = dataclasses.replace(
            record,
            quota=quota if policy_state == "ENFORCED" else None,
            policy_state=policy_state,
            timings=record.timings.merged(timings),
        )
        self._emit(
            "timing",
            {"intentId": record.intent_id, "timings": record.timings.to_json()},
        )
        return self._store(record, emit=False)

    # -- lifecycle side effects ----------------------------------------------

    def _teardown(self, record: IntentRecord) -> None:
        """Terminate semantics: free the booking slot and the policy."""
        if record.session_id:
            try:
                self.booking.release_session(record.session_id)
            except (NotFound, AlreadyReleased, OrionError) as exc:
                logger.warning("release of %s: %s", record.session_id, exc)
        self._withdraw_policy(record)
        self._policies.pop(record.intent_id, None)

    def _withdraw_policy(self, record: IntentRecord) -> None:
        if record.policy_id is None:
            return
        try:
            self.mediator.delete_policy(record.policy_id, record.policytype_id)
        except UnknownPolicy:
            pass  # already withheld or never created downstream
        except OrionError as exc:
            logger.warning("policy delete %s: %s", record.policy_id, exc)

    def _repush(self, record: IntentRecord) -> IntentRecord:
        policy_json = self._policies.get(record.intent_id)
        if policy_json is None:
            return record
        timings: dict[str, float] = {}
        try:
            receipt = self.mediator.put_policy(policy_json)
            if "processingMs" in receipt:
                timings["a1_mediator"] = float(receipt["processingMs"])
        except OrionError as exc:
            self._fail(record, DownstreamError(f"policy re-push failed: {exc}", exc))
        record = dataclasses.replace(record, policy_state="CREATED")
        self._store(record, emit=False)
        return self._await_enforcement(record, timings)
