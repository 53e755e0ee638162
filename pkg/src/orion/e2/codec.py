"""Canonical binary codec for E2 setup and RIC control PDUs.

Stands in for ASN.1 PER: a fixed header (magic 0x4F52, version, message
type, transaction id) followed by TLV fields (tag u8, length u16 BE,
value).  Encoding is deterministic -- fields are emitted in ascending tag
order -- and decode(encode(p)) == p for every valid PDU.  Unknown tags
are skipped on decode for forward compatibility; everything else that is
off-layout raises a typed CodecError, never an unhandled crash.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import Union

from orion.domain import SliceId
from orion.errors import FieldRangeError, MalformedFrame, UnknownMessageType

MAGIC = 0x4F52
VERSION = 0x01

MSG_SETUP_REQUEST = 0x01
MSG_SETUP_RESPONSE = 0x02
MSG_CONTROL_REQUEST = 0x03
MSG_CONTROL_ACK = 0x04
MSG_CONTROL_FAILURE = 0x05

TAG_NODE_ID = 0x01
TAG_FUNCTION_ADVERT = 0x02
TAG_RAN_FUNCTION_ID = 0x10
TAG_STYLE = 0x11
TAG_ACTION_ID = 0x12
TAG_SLICE = 0x13
TAG_RATIOS = 0x14
TAG_DISCIPLINE = 0x15
TAG_CAUSE = 0x20
TAG_DETAIL = 0x21

CAUSE_CAPACITY_EXCEEDED = 0x01
CAUSE_UNKNOWN_FUNCTION = 0x02
CAUSE_MALFORMED = 0x03
_CAUSES = (CAUSE_CAPACITY_EXCEEDED, CAUSE_UNKNOWN_FUNCTION, CAUSE_MALFORMED)

# E2SM-RC identifiers exercised by this service model
CONTROL_STYLE_RADIO_RESOURCE = 2
ACTION_SLICE_PRB_QUOTA = 6

# scheduling discipline tags carried opaquely in control requests
DISCIPLINE_EDF = 0x01
DISCIPLINE_PF = 0x02


def _check_u8(value: int, name: str) -> None:
    if not 0 <= value <= 0xFF:
        raise ValueError(f"{name} must fit an octet")


def _check_u16(value: int, name: str) -> None:
    if not 0 <= value <= 0xFFFF:
        raise ValueError(f"{name} must fit 16 bits")


def _check_u32(value: int, name: str) -> None:
    if not 0 <= value <= 0xFFFFFFFF:
        raise ValueError(f"{name} must fit 32 bits")


@dataclass(frozen=True)
class FunctionAdvert:
    """One advertised (function, control style, action) capability."""

    function_id: int
    style: int
    action: int

    def __post_init__(self) -> None:
        _check_u16(self.function_id, "function_id")
        _check_u8(self.style, "style")
        _check_u8(self.action, "action")


@dataclass(frozen=True)
class E2SetupRequest:
    transaction_id: int
    node_id: str
    functions: tuple[FunctionAdvert, ...]

    def __post_init__(self) -> None:
        _check_u32(self.transaction_id, "transaction_id")


@dataclass(frozen=True)
class E2SetupResponse:
    transaction_id: int
    node_id: str
    functions: tuple[FunctionAdvert, ...] = ()

    def __post_init__(self) -> None:
        _check_u32(self.transaction_id, "transaction_id")


@dataclass(frozen=True)
class RicControlRequest:
    transaction_id: int
    ran_function_id: int
    style: int
    action_id: int
    slice_id: SliceId
    min_ratio: int
    dedicated_ratio: int
    max_ratio: int
    discipline: int

    def __post_init__(self) -> None:
        _check_u32(self.transaction_id, "transaction_id")
        _check_u16(self.ran_function_id, "ran_function_id")
        _check_u8(self.style, "style")
        _check_u8(self.action_id, "action_id")
        for name in ("min_ratio", "dedicated_ratio", "max_ratio"):
            value = getattr(self, name)
            if not 0 <= value <= 100:
                raise ValueError(f"{name} must be within 0..100")
        _check_u8(self.discipline, "discipline")


@dataclass(frozen=True)
class RicControlAcknowledge:
    transaction_id: int
    ran_function_id: int

    def __post_init__(self) -> None:
        _check_u32(self.transaction_id, "transaction_id")
        _check_u16(self.ran_function_id, "ran_function_id")


@dataclass(frozen=True)
class RicControlFailure:
    transaction_id: int
    cause: int
    detail: str = ""

    def __post_init__(self) -> None:
        _check_u32(self.transaction_id, "transaction_id")
        if self.cause not in _CAUSES:
            raise ValueError(f"unknown failure cause {self.cause:#x}")


ControlPdu = Union[
    E2SetupRequest,
    E2SetupResponse,
    RicControlRequest,
    RicControlAcknowledge,
    RicControlFailure,
]

_MSG_TYPE_BY_CLASS = {
    E2SetupRequest: MSG_SETUP_REQUEST,
    E2SetupResponse: MSG_SETUP_RESPONSE,
    RicControlRequest: MSG_CONTROL_REQUEST,
    RicControlAcknowledge: MSG_CONTROL_ACK,
    RicControlFailure: MSG_CONTROL_FAILURE,
}


def _tlv(tag: int, value: bytes) -> bytes:
    if len(value) > 0xFFFF:
        raise ValueError(f"tlv value for tag {tag:#x} exceeds 16-bit length")
    return struct.pack(">BH", tag, len(value)) + value


def _encode_slice(slice_id: SliceId) -> bytes:
    # sst u8 + sd 3 bytes + mcc 3 ascii + mnc 3 ascii ('F' filler) + nci u32
    mnc = slice_id.plmn_mnc.ljust(3, "F")
    return (
        struct.pack(">B", slice_id.sst)
        + bytes.fromhex(slice_id.sd)
        + slice_id.plmn_mcc.encode("ascii")
        + mnc.encode("ascii")
        + struct.pack(">I", slice_id.nci)
    )


def _decode_slice(value: bytes) -> SliceId:
    if len(value) != 14:
        raise MalformedFrame("slice field must be 14 bytes")
    sst = value[0]
    sd = value[1:4].hex().upper()
    try:
        mcc = value[4:7].decode("ascii")
        mnc = value[7:10].decode("ascii").rstrip("F")
    except UnicodeDecodeError:
        raise MalformedFrame("plmn must be ascii") from None
    nci = struct.unpack(">I", value[10:14])[0]
    try:
        return SliceId(sst=sst, sd=sd, plmn_mcc=mcc, plmn_mnc=mnc, nci=nci)
    except ValueError as exc:
        raise FieldRangeError(str(exc)) from None


def encode(pdu: ControlPdu) -> bytes:
    """Serialize a PDU to its canonical byte sequence (header + TLVs)."""
    msg_type = _MSG_TYPE_BY_CLASS[type(pdu)]
    out = bytearray(struct.pack(">HBBI", MAGIC, VERSION, msg_type, pdu.transaction_id))
    if isinstance(pdu, (E2SetupRequest, E2SetupResponse)):
        out += _tlv(TAG_NODE_ID, pdu.node_id.encode("utf-8"))
        for advert in pdu.functions:
            out += _tlv(
                TAG_FUNCTION_ADVERT,
                struct.pack(">HBB", advert.function_id, advert.style, advert.action),
            )
    elif isinstance(pdu, RicControlRequest):
        out += _tlv(TAG_RAN_FUNCTION_ID, struct.pack(">H", pdu.ran_function_id))
        out += _tlv(TAG_STYLE, struct.pack(">B", pdu.style))
        out += _tlv(TAG_ACTION_ID, struct.pack(">B", pdu.action_id))
        out += _tlv(TAG_SLICE, _encode_slice(pdu.slice_id))
        out += _tlv(
            TAG_RATIOS,
            struct.pack(">BBB", pdu.min_ratio, pdu.dedicated_ratio, pdu.max_ratio),
        )
        out += _tlv(TAG_DISCIPLINE, struct.pack(">B", pdu.discipline))
    elif isinstance(pdu, RicControlAcknowledge):
        out += _tlv(TAG_RAN_FUNCTION_ID, struct.pack(">H", pdu.ran_function_id))
    elif isinstance(pdu, RicControlFailure):
        out += _tlv(TAG_CAUSE, struct.pack(">B", pdu.cause))
        out += _tlv(TAG_DETAIL, pdu.detail.encode("utf-8"))
    return bytes(out)


def _parse_tlvs(data: bytes, repeatable: tuple[int, ...] = ()) -> dict[int, list[bytes]]:
    fields: dict[int, list[bytes]] = {}
    pos = 0
    while pos < len(data):
        if pos + 3 > len(data):
            raise MalformedFrame("truncated tlv header")
        tag, length = struct.unpack_from(">BH", data, pos)
        pos += 3
        if pos + length > len(data):
            raise MalformedFrame(f"tlv {tag:#x} overruns payload")
        value = data[pos : pos + length]
        pos += length
        if tag in fields and tag not in repeatable:
            raise MalformedFrame(f"duplicate tag {tag:#x}")
        fields.setdefault(tag, []).append(value)
    return fields


def _required(fields: dict[int, list[bytes]], tag: int) -> bytes:
    try:
        return fields[tag][0]
    except KeyError:
        raise MalformedFrame(f"missing required tag {tag:#x}") from None


def _fixed(value: bytes, size: int, what: str) -> bytes:
    if len(value) != size:
        raise MalformedFrame(f"{what} must be {size} bytes")
    return value


def _utf8(value: bytes, what: str) -> str:
    try:
        return value.decode("utf-8")
    except UnicodeDecodeError:
        raise MalformedFrame(f"{what} is not valid utf-8") from None


def decode(data: bytes) -> ControlPdu:
    """Parse a payload back into a PDU, rejecting anything off-layout."""
    if len(data) < 8:
        raise MalformedFrame("payload shorter than fixed header")
    magic, version, msg_type, transaction_id = struct.unpack_from(">HBBI", data, 0)
    if magic != MAGIC:
        raise MalformedFrame(f"bad magic {magic:#06x}")
    if version != VERSION:
        raise MalformedFrame(f"unsupported version {version}")
    if msg_type not in _MSG_TYPE_BY_CLASS.values():
        raise UnknownMessageType(f"message type {msg_type:#04x}")
    body = data[8:]

    if msg_type in (MSG_SETUP_REQUEST, MSG_SETUP_RESPONSE):
        fields = _parse_tlvs(body, repeatable=(TAG_FUNCTION_ADVERT,))
        node_id = _utf8(_required(fields, TAG_NODE_ID), "node_id")
        functions = []
        for raw in fields.get(TAG_FUNCTION_ADVERT, []):
            function_id, style, action = struct.unpack(
                ">HBB", _fixed(raw, 4, "function advert")
            )
            functions.append(FunctionAdvert(function_id, style, action))
        cls = E2SetupRequest if msg_type == MSG_SETUP_REQUEST else E2SetupResponse
        return cls(transaction_id, node_id, tuple(functions))

    fields = _parse_tlvs(body)
    if msg_type == MSG_CONTROL_REQUEST:
        ran_function_id = struct.unpack(
            ">H", _fixed(_required(fields, TAG_RAN_FUNCTION_ID), 2, "ran_function_id")
        )[0]
        style = _fixed(_required(fields, TAG_STYLE), 1, "style")[0]
        action_id = _fixed(_required(fields, TAG_ACTION_ID), 1, "action_id")[0]
        slice_id = _decode_slice(_required(fields, TAG_SLICE))
        ratios = _fixed(_required(fields, TAG_RATIOS), 3, "ratios")
        for octet in ratios:
            if octet > 100:
                raise FieldRangeError(f"ratio {octet} outside 0..100")
        discipline = _fixed(_required(fields, TAG_DISCIPLINE), 1, "discipline")[0]
        return RicControlRequest(
            transaction_id=transaction_id,
            ran_function_id=ran_function_id,
            style=style,
            action_id=action_id,
            slice_id=slice_id,
            min_ratio=ratios[0],
            dedicated_ratio=ratios[1],
            max_ratio=ratios[2],
            discipline=discipline,
        )
    if msg_type == MSG_CONTROL_ACK:
        ran_function_id = struct.unpack(
            ">H", _fixed(_required(fields, TAG_RAN_FUNCTION_ID), 2, "ran_function_id")
        )[0]
        return RicControlAcknowledge(transaction_id, ran_function_id)

    cause = _fixed(_required(fields, TAG_CAUSE), 1, "cause")[0]
    if cause not in _CAUSES:
        raise FieldRangeError(f"unknown cause {cause:#04x}")
    detail = _utf8(fields.get(TAG_DETAIL, [b""])[0], "detail")
    return RicControlFailure(transaction_id, cause, detail)
