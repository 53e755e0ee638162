"""Deterministic checker for the eight field-population rules.

Each observed tool exchange is judged against the entry's ground truth.
The rules partition the failure space so any single defect trips exactly
one rule: uplink fabrications go to R5, minimum/default substitutions to
R6, remaining unstated-field population to R3.
"""

from __future__ import annotations

import math
from typing import Any, Optional, Sequence

from orion.bridge.core import ToolCall, ToolDescriptor, create_session_descriptor
from orion.harness.dataset import DatasetEntry
from orion.jsonutil import camel

ACCEPTED_TOOL_NAMES = ("create_session", "network_slice_booking")

_UL_FIELDS = {
    camel(n)
    for n in ("max_ul_thpt_per_device_bps", "max_ul_thpt_per_slice_bps",
              "ul_delay_budget_ms")
}
_MINIMUM_SENTINELS = (0, 1, 0.0, 1.0)


def _values_match(expected: Any, actual: Any) -> bool:
    if isinstance(expected, float) or isinstance(actual, float):
        try:
            return math.isclose(float(expected), float(actual), rel_tol=1e-9)
        except (TypeError, ValueError):
            return False
    return expected == actual


def check_tool_use_rules(
    entry: DatasetEntry,
    calls: Sequence[ToolCall],
    descriptor: Optional[ToolDescriptor] = None,
    refused: bool = False,
) -> list[str]:
    """Returns one violation line per broken rule (empty when clean)."""
    descriptor = descriptor or create_session_descriptor()
    violations: list[str] = []

    if refused:
        violations.append(
            "R8: refusal/follow-up although every unstated field is nullable"
        )
        return violations

    if len(calls) != 1:
        violations.append(f"R1: expected exactly one tool call, observed {len(calls)}")
    if not calls:
        return violations

    call = calls[0]
    if call.tool_name not in ACCEPTED_TOOL_NAMES:
        violations.append(f"R2: wrong tool name {call.tool_name!r}")

    # keys that fail the schema belong to R7 alone; the remaining rules
    # only judge well-formed arguments
    bad_keys = _schema_offenders(descriptor, call.arguments)
    for key, reason in bad_keys.items():
        violations.append(f"R7: argument {key} does not parse: {reason}")

    truth = {camel(k): v for k, v in entry.fields.items()}
    for key, value in call.arguments.items():
        if value is None or key in truth or key in bad_keys:
            continue
        if key in _UL_FIELDS:
            violations.append(
                f"R5: uplink field {key} populated without a stated uplink"
            )
        elif value in _MINIMUM_SENTINELS:
            violations.append(
                f"R6: unstated field {key} filled with minimum/default {value!r}"
            )
        else:
            violations.append(f"R3: unstated field {key} populated with {value!r}")

    for key, expected in truth.items():
        if key in bad_keys:
            continue
        actual = call.arguments.get(key)
        if actual is None:
            violations.append(f"R4: stated field {key} missing from the call")
        elif not _values_match(expected, actual):
            violations.append(
                f"R4: stated field {key} carries {actual!r}, expected {expected!r}"
            )

    return violations


def _schema_offenders(
    descriptor: ToolDescriptor, arguments: dict[str, Any]
) -> dict[str, str]:
    specs = {spec.name: spec for spec in descriptor.argument_schema}
    offenders: dict[str, str] = {}
    for key, value in arguments.items():
        spec = specs.get(key)
        if spec is None:
            offenders[key] = "unknown argument"
            continue
        if value is None:
            continue
        if spec.type == "integer":
            ok = isinstance(value, int) and not isinstance(value, bool)
        elif spec.type == "number":
            ok = isinstance(value, (int, float)) and not isinstance(value, bool)
        else:
            ok = isinstance(value, str)
        if not ok:
            offenders[key] = f"must be a {spec.type}"
    return offenders
