"""Canonical JSON helpers.

All inter-service payloads use one serialization: compact separators,
camelCase keys, UTF-8, insertion order preserved.  Byte-equality of
forwarded payloads (tool bridge -> booking service) relies on every
component dumping through here.
"""

from __future__ import annotations

import json
from typing import Any


def canonical_dumps(obj: Any) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def canonical_bytes(obj: Any) -> bytes:
    return canonical_dumps(obj).encode("utf-8")


def camel(name: str) -> str:
    """snake_case -> camelCase (``duration_s`` -> ``durationS``)."""
    head, *rest = name.split("_")
    return head + "".join(part.capitalize() for part in rest)
