"""Translator adapters: operator text -> tool call -> slice class.

Three adapters share one contract: ``propose`` returns exactly one of a
tool call, a clarification question, or a refusal; ``classify`` names the
slice class once the booking is confirmed.

The deterministic adapter does unit-aware regex extraction and never
fills a field the intent did not state.  The replay adapter re-issues
recorded decisions keyed by intent id.  The live adapter speaks an
external chat-completions API with the rule prompt shimmed in as a user
message; it is a plug-in, not an acceptance target.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

from orion.bridge import ToolCall, ToolDescriptor
from orion.domain import SessionBooking, SliceRequirements, SliceType
from orion.errors import TranslationFailed


def load_system_prompt() -> str:
    return (
        resources.files("orion.gateway").joinpath("system_prompt.txt").read_text()
    )


@dataclass
class Conversation:
    """Ordered transcript of one operator exchange (append-only turns)."""

    conversation_id: str
    turns: list[tuple[str, str]] = field(default_factory=list)
    pending_clarification: Optional[str] = None
    intent_key: Optional[str] = None
    clarification_rounds: int = 0
    call_seq: int = 0

    def append(self, role: str, content: str) -> None:
        assert role in ("operator", "system", "translator", "tool")
        self.turns.append((role, content))

    def operator_text(self) -> str:
        return " ".join(content for role, content in self.turns if role == "operator")

    def next_call_id(self) -> str:
        self.call_seq += 1
        return f"call-{self.conversation_id}-{self.call_seq}"

    def to_json(self) -> dict[str, Any]:
        return {
            "conversationId": self.conversation_id,
            "turns": [{"role": role, "content": content} for role, content in self.turns],
            "pendingClarification": self.pending_clarification,
        }


@dataclass(frozen=True)
class TranslatorDecision:
    tool_call: Optional[ToolCall] = None
    clarification: Optional[str] = None
    refusal: Optional[str] = None

    def __post_init__(self) -> None:
        populated = [
            v for v in (self.tool_call, self.clarification, self.refusal) if v is not None
        ]
        if len(populated) != 1:
            raise ValueError("decision must populate exactly one variant")


# -- unit-aware extraction ----------------------------------------------

_THROUGHPUT_RE = re.compile(r"\b(\d+(?:\.\d+)?)\s*(gbps|mbps|kbps|bps)\b", re.I)
_DELAY_RE = re.compile(r"\b(\d+(?:\.\d+)?)\s*(?:ms|milliseconds?)\b", re.I)
_PERCENT_RE = re.compile(r"\b(\d+(?:\.\d+)?)\s*%")
_PER_RE = re.compile(
    r"\bpacket\s+error\s+rate\b\D{0,12}(\d+(?:\.\d+)?(?:[eE]-?\d+)?)"
)
_COUNT_RE = re.compile(
    r"\b(\d[\d,]*(?:\.\d+)?)\s*(thousand|million|[km])?\s+(?:[a-z][a-z-]*\s+)?"
    r"(devices|sensors|meters|endpoints|nodes|units|machines|trackers|cameras)\b",
    re.I,
)
_DURATION_RE = re.compile(
    r"\bfor\s+(?:the\s+next\s+)?(\d+(?:\.\d+)?)\s*"
    r"(hours?|hrs?|h|minutes?|mins?|days?|weeks?)\b",
    re.I,
)
_AREA_RE = re.compile(
    r"\b(?:in|across|within|at)\s+(?:the\s+)?area\s+(?:of\s+)?"
    r"([A-Za-z0-9][\w\-]*(?:\.[\w\-]+)*)",
    re.I,
)

_UL_WORDS = re.compile(r"\b(?:uplink|upload|upstream|ul)\b", re.I)
_DL_WORDS = re.compile(r"\b(?:downlink|download|downstream|dl)\b", re.I)
_PER_DEVICE_WORDS = re.compile(
    r"\b(?:per|each)\s+(?:device|sensor|meter|endpoint|node|unit|user|machine)\b", re.I
)

_THROUGHPUT_UNIT = {"bps": 1, "kbps": 10**3, "mbps": 10**6, "gbps": 10**9}
_DURATION_UNIT_S = {
    "h": 3600, "hr": 3600, "hrs": 3600, "hour": 3600, "hours": 3600,
    "min": 60, "mins": 60, "minute": 60, "minutes": 60,
    "day": 86400, "days": 86400, "week": 604800, "weeks": 604800,
}
_COUNT_MULTIPLIER = {"thousand": 10**3, "million": 10**6, "k": 10**3, "m": 10**6}
_UNIT_WORDS = {"mbps", "gbps", "kbps", "bps", "ms"}


def _window(text: str, start: int, end: int, words: int = 5) -> str:
    before = re.findall(r"[\w.%-]+", text[:start])[-words:]
    after = re.findall(r"[\w.%-]+", text[end:])[:words]
    return " ".join(before) + " | " + " ".join(after)


_QUALIFIER_REACH = 30  # characters a qualifier may sit from its quantity


def _span_distance(a: re.Match, b: re.Match) -> int:
    if a.end() <= b.start():
        return b.start() - a.end()
    if b.end() <= a.start():
        return a.start() - b.end()
    return 0


def _bind_qualifiers(
    quantities: list[re.Match],
    qualifiers: list[tuple[re.Match, str]],
    backward_only: bool = False,
) -> dict[int, str]:
    """Attach each qualifier word to its nearest quantity.

    A quantity keeps the closest qualifier bound to it; qualifiers
    farther than the reach bind to nothing.  backward_only restricts a
    qualifier to quantities that precede it ("20 kbps ... per device"),
    the natural attachment for scope phrases.
    """
    best: dict[int, tuple[int, str]] = {}
    for qualifier, label in qualifiers:
        distances = [
            (_span_distance(qualifier, quantity), index)
            for index, quantity in enumerate(quantities)
            if not (backward_only and quantity.end() > qualifier.start())
        ]
        distance, index = min(distances, default=(None, None))
        if index is None or distance > _QUALIFIER_REACH:
            continue
        if index not in best or distance < best[index][0]:
            best[index] = (distance, label)
    return {index: label for index, (_, label) in best.items()}


def extract_requirements(text: str) -> SliceRequirements:
    """Pull exactly the stated fields out of free text (schema units)."""
    fields: dict[str, Any] = {}

    def put(name: str, value) -> None:
        fields.setdefault(name, value)

    throughput_matches = list(_THROUGHPUT_RE.finditer(text))
    delay_matches = [
        m
        for m in _DELAY_RE.finditer(text)
        if re.search(r"latenc|delay|budget|deadline|loop", _window(text, m.start(), m.end()), re.I)
    ]
    quantities = throughput_matches + delay_matches

    direction_words = [(m, "ul") for m in _UL_WORDS.finditer(text)] + [
        (m, "dl") for m in _DL_WORDS.finditer(text)
    ]
    directions = _bind_qualifiers(quantities, direction_words)
    scopes = _bind_qualifiers(
        quantities,
        [(m, "device") for m in _PER_DEVICE_WORDS.finditer(text)],
        backward_only=True,
    )

    for index, m in enumerate(throughput_matches):
        bps = int(round(float(m.group(1)) * _THROUGHPUT_UNIT[m.group(2).lower()]))
        direction = directions.get(index, "dl")
        scope = scopes.get(index, "slice")
        put(f"max_{direction}_thpt_per_{scope}_bps", bps)

    offset = len(throughput_matches)
    for index, m in enumerate(delay_matches):
        value = float(m.group(1))
        if directions.get(offset + index) == "ul":
            put("ul_delay_budget_ms", value)
        else:
            # direction-less delay maps to downlink only (rule 5)
            put("dl_delay_budget_ms", value)

    for m in _PERCENT_RE.finditer(text):
        ctx = _window(text, m.start(), m.end())
        value = float(m.group(1))
        if re.search(r"reliab", ctx, re.I):
            put("reliability_pct", value)
        elif re.search(r"availab", ctx, re.I):
            put("availability_pct", value)

    m = _PER_RE.search(text)
    if m:
        put("packet_error_rate", float(m.group(1)))

    for m in _COUNT_RE.finditer(text):
        filler = text[m.end(1) : m.start(3)].strip().lower()
        if any(word in _UNIT_WORDS for word in filler.split()):
            continue
        count = float(m.group(1).replace(",", ""))
        if m.group(2):
            count *= _COUNT_MULTIPLIER[m.group(2).lower()]
        put("device_count", int(round(count)))

    m = _DURATION_RE.search(text)
    if m:
        seconds = float(m.group(1)) * _DURATION_UNIT_S[m.group(2).lower()]
        put("duration_s", int(round(seconds)))

    m = _AREA_RE.search(text)
    if m:
        put("area_of_service", m.group(1))

    return SliceRequirements(**fields)


# -- classification -------------------------------------------------------

_EXPLICIT = (
    (re.compile(r"\burllc\b|\bultra[- ]reliable\b", re.I), SliceType.URLLC),
    (re.compile(r"\bmmtc\b|\bmassive\s+(?:machine|iot)\b", re.I), SliceType.MMTC),
    (re.compile(r"\bembb\b|\benhanced\s+mobile\s+broadband\b", re.I), SliceType.EMBB),
)
_MMTC_VOCAB = re.compile(r"\bsensors?\b|\bmeters?\b|\bmetering\b|\btelemetry\b|\biot\b", re.I)
_EMBB_VOCAB = re.compile(
    r"\bstreaming\b|\bgaming\b|\bvideo\b|\bbroadcast\b|\b4k\b|\b8k\b|\bmedia\b|\bjournalism\b",
    re.I,
)

URLLC_DELAY_MS = 10.0
URLLC_RELIABILITY_PCT = 99.9
MMTC_DEVICE_COUNT = 1000
EMBB_THROUGHPUT_BPS = 50 * 10**6


def classify_text(text: str, req: SliceRequirements) -> Optional[SliceType]:
    """Priority: explicit keyword, then URLLC, mMTC, eMBB signals."""
    for pattern, slice_type in _EXPLICIT:
        if pattern.search(text):
            return slice_type
    delays = [d for d in (req.dl_delay_budget_ms, req.ul_delay_budget_ms) if d]
    if delays and min(delays) <= URLLC_DELAY_MS:
        return SliceType.URLLC
    if req.reliability_pct and req.reliability_pct >= URLLC_RELIABILITY_PCT:
        return SliceType.URLLC
    if req.device_count and req.device_count >= MMTC_DEVICE_COUNT:
        return SliceType.MMTC
    if _MMTC_VOCAB.search(text):
        return SliceType.MMTC
    throughputs = [
        t
        for t in (
            req.max_dl_thpt_per_slice_bps,
            req.max_ul_thpt_per_slice_bps,
            req.max_dl_thpt_per_device_bps,
            req.max_ul_thpt_per_device_bps,
        )
        if t
    ]
    if throughputs and max(throughputs) >= EMBB_THROUGHPUT_BPS:
        return SliceType.EMBB
    if _EMBB_VOCAB.search(text):
        return SliceType.EMBB
    return None


_CLARIFICATION_QUESTION = (
    "Which service class should this slice serve (eMBB, URLLC, or mMTC)? "
    "Naming a throughput, a delay budget, or a device count also works."
)


class DeterministicTranslator:
    """Rule-based reference translator; fully reproducible."""

    name = "deterministic"

    def propose(
        self, conversation: Conversation, descriptors: Sequence[ToolDescriptor]
    ) -> TranslatorDecision:
        if not descriptors:
            raise TranslationFailed("no tools advertised")
        text = conversation.operator_text()
        req = extract_requirements(text)
        if classify_text(text, req) is None:
            return TranslatorDecision(clarification=_CLARIFICATION_QUESTION)
        tool = next(
            (d for d in descriptors if d.name == "create_session"), descriptors[0]
        )
        call = ToolCall(
            call_id=conversation.next_call_id(),
            tool_name=tool.name,
            arguments=req.to_json(),
            conversation_id=conversation.conversation_id,
        )
        return TranslatorDecision(tool_call=call)

    def classify(
        self, conversation: Conversation, booking: SessionBooking
    ) -> SliceType:
        slice_type = classify_text(
            conversation.operator_text(), booking.requirements
        )
        if slice_type is None:
            raise TranslationFailed("cannot classify the confirmed session")
        return slice_type


class TranscriptReplayTranslator:
    """Replays recorded decisions keyed by intent id.

    Transcript: one JSON object per line with ``key``, a ``propose``
    object ({"toolCall": {...}} | {"clarification": str} | {"refusal":
    str}) and optionally ``classify`` (slice type string).
    """

    name = "replay"

    def __init__(self, records: dict[str, dict]):
        self._records = records

    @classmethod
    def from_file(cls, path: str | Path) -> "TranscriptReplayTranslator":
        records = {}
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                record = json.loads(line)
                records[record["key"]] = record
        return cls(records)

    def _record_for(self, conversation: Conversation) -> dict:
        key = conversation.intent_key
        if key is None or key not in self._records:
            raise TranslationFailed(f"no transcript entry for intent {key!r}")
        return self._records[key]

    def propose(
        self, conversation: Conversation, descriptors: Sequence[ToolDescriptor]
    ) -> TranslatorDecision:
        decision = self._record_for(conversation).get("propose", {})
        if "toolCall" in decision:
            data = decision["toolCall"]
            return TranslatorDecision(
                tool_call=ToolCall(
                    call_id=conversation.next_call_id(),
                    tool_name=data["toolName"],
                    arguments=dict(data["arguments"]),
                    conversation_id=conversation.conversation_id,
                )
            )
        if "clarification" in decision:
            return TranslatorDecision(clarification=decision["clarification"])
        if "refusal" in decision:
            return TranslatorDecision(refusal=decision["refusal"])
        raise TranslationFailed("transcript entry has no usable decision")

    def classify(
        self, conversation: Conversation, booking: SessionBooking
    ) -> SliceType:
        record = self._record_for(conversation)
        if "classify" not in record:
            raise TranslationFailed("transcript entry has no classification")
        return SliceType.parse(record["classify"])


# messages -> {"content": str, "usage": {...}}; injectable for tests
ChatTransport = Callable[[list[dict]], dict]


class LiveModelTranslator:
    """Optional adapter for an external chat-completions endpoint.

    The rule prompt travels as a leading *user* message (provider shims
    reject system roles on some tool-calling paths).  Expects the model
    to answer with bare JSON: {"tool": ..., "arguments": {...}} or
    {"clarification": ...} or {"refusal": ...}; classification answers
    are the bare slice-type string.
    """

    name = "live"

    def __init__(
        self,
        transport: Optional[ChatTransport] = None,
        base_url: str = "http://localhost:8000/v1/chat/completions",
        model: str = "",
        api_key: Optional[str] = None,
        timeout_s: float = 60.0,
    ):
        self._transport = transport or self._http_transport
        self.base_url = base_url
        self.model = model
        self.api_key = api_key
        self.timeout_s = timeout_s
        self.total_usage: dict[str, int] = {}
        self.last_usage: dict[str, int] = {}

    def _http_transport(self, messages: list[dict]) -> dict:
        import httpx

        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        response = httpx.post(
            self.base_url,
            json={"model": self.model, "messages": messages},
            headers=headers,
            timeout=self.timeout_s,
        )
        response.raise_for_status()
        body = response.json()
        return {
            "content": body["choices"][0]["message"]["content"],
            "usage": body.get("usage", {}),
        }

    def _messages(self, conversation: Conversation, task: str) -> list[dict]:
        messages = [{"role": "user", "content": load_system_prompt()}]
        for role, content in conversation.turns:
            wire_role = "assistant" if role == "translator" else "user"
            messages.append({"role": wire_role, "content": content})
        messages.append({"role": "user", "content": task})
        return messages

    def _ask(self, conversation: Conversation, task: str) -> str:
        try:
            reply = self._transport(self._messages(conversation, task))
        except Exception as exc:  # noqa: BLE001 - surfaced uniformly
            raise TranslationFailed(f"live adapter transport: {exc}") from exc
        usage = reply.get("usage") or {}
        self.last_usage = dict(usage)
        for key, value in usage.items():
            if isinstance(value, int):
                self.total_usage[key] = self.total_usage.get(key, 0) + value
        return reply["content"]

    def propose(
        self, conversation: Conversation, descriptors: Sequence[ToolDescriptor]
    ) -> TranslatorDecision:
        catalogue = json.dumps([d.to_json() for d in descriptors])
        content = self._ask(
            conversation,
            "Available tools: " + catalogue + "\n"
            "Reply with JSON only: {\"tool\": name, \"arguments\": {...}} "
            "or {\"clarification\": question} or {\"refusal\": reason}.",
        )
        try:
            decision = json.loads(content)
        except json.JSONDecodeError as exc:
            raise TranslationFailed(f"unparseable model reply: {content!r}") from exc
        if "tool" in decision:
            return TranslatorDecision(
                tool_call=ToolCall(
                    call_id=conversation.next_call_id(),
                    tool_name=decision["tool"],
                    arguments=dict(decision.get("arguments", {})),
                    conversation_id=conversation.conversation_id,
                )
            )
        if "clarification" in decision:
            return TranslatorDecision(clarification=str(decision["clarification"]))
        if "refusal" in decision:
            return TranslatorDecision(refusal=str(decision["refusal"]))
        raise TranslationFailed(f"model reply names no decision: {content!r}")

    def classify(
        self, conversation: Conversation, booking: SessionBooking
    ) -> SliceType:
        content = self._ask(
            conversation,
            "Confirmed session parameters: "
            + json.dumps(booking.to_json())
            + "\nReply with exactly one of: eMBB, URLLC, mMTC.",
        )
        try:
            return SliceType.parse(content.strip().strip('"'))
        except ValueError as exc:
            raise TranslationFailed(str(exc)) from exc
