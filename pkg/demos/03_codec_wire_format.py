"""Encode a RIC control request, inspect the bytes, decode it back.

Run:  python3 demos/03_codec_wire_format.py
"""

from orion.domain import SliceId
from orion.e2 import codec


def hexdump(data: bytes) -> str:
    lines = []
    for offset in range(0, len(data), 16):
        chunk = data[offset : offset + 16]
        hexes = " ".join(f"{b:02x}" for b in chunk)
        text = "".join(chr(b) if 32 <= b <= 126 else "." for b in chunk)
        lines.append(f"{offset:08x}  {hexes:<48}  |{text}|")
    return "\n".join(lines)


def main() -> None:
    request = codec.RicControlRequest(
        transaction_id=7,
        ran_function_id=1,
        style=2,       # radio resource allocation
        action_id=6,   # slice-level PRB quota
        slice_id=SliceId(sst=1, sd="456DEF", plmn_mcc="724", plmn_mnc="11", nci=1),
        min_ratio=0,
        dedicated_ratio=30,
        max_ratio=100,
        discipline=codec.DISCIPLINE_PF,
    )
    raw = codec.encode(request)
    print("== control request on the wire ==")
    print(hexdump(raw))
    print()
    print("magic 0x4f52, version 01, msg type 03, then tag/len/value fields;")
    print("find the style octet 0x02 after tag 0x11 and action 0x06 after 0x12.")
    print()
    decoded = codec.decode(raw)
    print("decode(encode(p)) == p :", decoded == request)

    print("\n== a failure frame ==")
    failure = codec.RicControlFailure(
        7, codec.CAUSE_CAPACITY_EXCEEDED, "capacity exceeded"
    )
    print(hexdump(codec.encode(failure)))

    print("\n== decode is total: garbage yields typed errors ==")
    for blob in (b"", b"\x00\x01", b"\x4f\x52\x01\x7f\x00\x00\x00\x01"):
        try:
            codec.decode(blob)
        except Exception as exc:  # noqa: BLE001
            print(f"  {blob!r:34} -> {type(exc).__name__}: {exc}")


if __name__ == "__main__":
    main()
