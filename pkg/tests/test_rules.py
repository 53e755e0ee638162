"""Fixture suite for the rule checker: one crafted bad call per rule,
each tripping exactly its own rule."""

import re

from orion.bridge import ToolCall
from orion.domain import SliceRequirements
from orion.harness.dataset import DatasetEntry
from orion.harness.rules import check_tool_use_rules
from orion.domain import SliceType

ENTRY = DatasetEntry(
    id="intent-fx",
    text="Provision a URLLC slice with a 5 ms delay budget and 10 Mbps downlink",
    slice_type=SliceType.URLLC,
    fields={
        "dl_delay_budget_ms": 5.0,
        "max_dl_thpt_per_slice_bps": 10_000_000,
    },
)


def good_arguments() -> dict:
    return SliceRequirements(
        dl_delay_budget_ms=5.0, max_dl_thpt_per_slice_bps=10_000_000
    ).to_json()


def call(arguments=None, name="create_session", cid="c1") -> ToolCall:
    return ToolCall(cid, name, arguments or good_arguments())


def rules_of(violations: list[str]) -> set[str]:
    return {re.match(r"(R\d)", v).group(1) for v in violations}


def test_perfect_call_is_clean():
    assert check_tool_use_rules(ENTRY, [call()]) == []


def test_r1_duplicate_calls():
    violations = check_tool_use_rules(ENTRY, [call(cid="c1"), call(cid="c2"),
                                              call(cid="c3")])
    assert rules_of(violations) == {"R1"}


def test_r1_no_call_at_all():
    violations = check_tool_use_rules(ENTRY, [])
    assert rules_of(violations) == {"R1"}


def test_r2_wrong_tool_name():
    violations = check_tool_use_rules(ENTRY, [call(name="book_slice")])
    assert rules_of(violations) == {"R2"}


def test_r3_unstated_field_populated():
    arguments = good_arguments()
    arguments["areaOfService"] = "zone-9"  # fabricated non-minimum value
    violations = check_tool_use_rules(ENTRY, [call(arguments)])
    assert rules_of(violations) == {"R3"}


def test_r4_stated_field_missing_or_wrong():
    arguments = good_arguments()
    arguments["dlDelayBudgetMs"] = None
    violations = check_tool_use_rules(ENTRY, [call(arguments)])
    assert rules_of(violations) == {"R4"}

    arguments = good_arguments()
    arguments["maxDlThptPerSliceBps"] = 10  # unit slip: Mbps instead of bps
    violations = check_tool_use_rules(ENTRY, [call(arguments)])
    assert rules_of(violations) == {"R4"}


def test_r5_direction_fabrication():
    arguments = good_arguments()
    # directionless "delay budget" duplicated into the uplink field
    arguments["ulDelayBudgetMs"] = 5.0
    violations = check_tool_use_rules(ENTRY, [call(arguments)])
    assert rules_of(violations) == {"R5"}


def test_r6_minimum_substitution():
    arguments = good_arguments()
    arguments["deviceCount"] = 1  # schema minimum for an unstated field
    violations = check_tool_use_rules(ENTRY, [call(arguments)])
    assert rules_of(violations) == {"R6"}


def test_r7_schema_violation():
    arguments = good_arguments()
    arguments["deviceCount"] = "several"
    violations = check_tool_use_rules(ENTRY, [call(arguments)])
    assert rules_of(violations) == {"R7"}


def test_r7_unknown_argument():
    arguments = good_arguments()
    arguments["bandwidthClass"] = "gold"
    violations = check_tool_use_rules(ENTRY, [call(arguments)])
    assert rules_of(violations) == {"R7"}


def test_r8_refusal():
    violations = check_tool_use_rules(ENTRY, [], refused=True)
    assert rules_of(violations) == {"R8"}


def test_multi_defect_call_trips_multiple_rules():
    arguments = good_arguments()
    arguments["ulDelayBudgetMs"] = 5.0
    arguments["areaOfService"] = "zone-1"
    violations = check_tool_use_rules(
        ENTRY, [call(arguments, name="wrong_tool")]
    )
    assert rules_of(violations) == {"R2", "R3", "R5"}
