from orion.e2.codec import (
    ACTION_SLICE_PRB_QUOTA,
    CAUSE_CAPACITY_EXCEEDED,
    CAUSE_MALFORMED,
    CAUSE_UNKNOWN_FUNCTION,
    CONTROL_STYLE_RADIO_RESOURCE,
    DISCIPLINE_EDF,
    DISCIPLINE_PF,
    ControlPdu,
    E2SetupRequest,
    E2SetupResponse,
    FunctionAdvert,
    RicControlAcknowledge,
    RicControlFailure,
    RicControlRequest,
    decode,
    encode,
)
from orion.e2.framing import MAX_FRAME_BYTES, FramedConnection

__all__ = [
    "ACTION_SLICE_PRB_QUOTA",
    "CAUSE_CAPACITY_EXCEEDED",
    "CAUSE_MALFORMED",
    "CAUSE_UNKNOWN_FUNCTION",
    "CONTROL_STYLE_RADIO_RESOURCE",
    "DISCIPLINE_EDF",
    "DISCIPLINE_PF",
    "ControlPdu",
    "E2SetupRequest",
    "E2SetupResponse",
    "FramedConnection",
    "FunctionAdvert",
    "MAX_FRAME_BYTES",
    "RicControlAcknowledge",
    "RicControlFailure",
    "RicControlRequest",
    "decode",
    "encode",
]
