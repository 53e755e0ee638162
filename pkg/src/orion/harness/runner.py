"""Drives the dataset through the pipeline and aggregates the report.

Intents run sequentially (clean stage attribution); every entry is
terminated after recording so the booking slot, the policy, and the node
partition are all reclaimed before the next entry starts.
"""

from __future__ import annotations

import logging
import statistics
import time
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

from orion.domain import STAGE_NAMES, LifecycleEvent, LifecycleState
from orion.errors import OrionError, TranslationFailed
from orion.harness.dataset import DatasetEntry
from orion.harness.rules import check_tool_use_rules

logger = logging.getLogger(__name__)


@dataclass
class EntryResult:
    id: str
    truth: str
    predicted: Optional[str] = None
    policy_created: bool = False
    enforced: bool = False
    refused: bool = False
    clarified: bool = False
    violations: list[str] = field(default_factory=list)
    failure: Optional[str] = None
    policy_id: Optional[str] = None
    session_id: Optional[str] = None
    timings: dict[str, float] = field(default_factory=dict)
    usage: dict[str, int] = field(default_factory=dict)

    @property
    def correct(self) -> Optional[bool]:
        return None if self.predicted is None else self.predicted == self.truth

    def to_json(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "truth": self.truth,
            "predicted": self.predicted,
            "correct": self.correct,
            "policyCreated": self.policy_created,
            "enforced": self.enforced,
            "refused": self.refused,
            "clarified": self.clarified,
            "violations": list(self.violations),
            "failure": self.failure,
            "policyId": self.policy_id,
            "sessionId": self.session_id,
            "timings": dict(self.timings),
            "usage": dict(self.usage),
        }


@dataclass
class RunReport:
    adapter: str
    entries: list[EntryResult] = field(default_factory=list)
    truncated: bool = False
    started_at: float = 0.0
    finished_at: float = 0.0

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def success_count(self) -> int:
        return sum(1 for e in self.entries if e.policy_created)

    @property
    def success_rate(self) -> float:
        return self.success_count / self.size if self.size else 0.0

    @property
    def prediction_count(self) -> int:
        return sum(1 for e in self.entries if e.predicted is not None)

    @property
    def prediction_rate(self) -> float:
        return self.prediction_count / self.size if self.size else 0.0

    @property
    def classification_accuracy(self) -> float:
        predicted = [e for e in self.entries if e.predicted is not None]
        if not predicted:
            return 0.0
        return sum(1 for e in predicted if e.correct) / len(predicted)

    @property
    def enforcement_rate(self) -> float:
        return (
            sum(1 for e in self.entries if e.enforced) / self.size if self.size else 0.0
        )

    @property
    def rule_violation_count(self) -> int:
        return sum(len(e.violations) for e in self.entries)

    def stage_stats(self) -> dict[str, dict[str, float]]:
        stats: dict[str, dict[str, float]] = {}
        for stage in STAGE_NAMES:
            samples = [
                e.timings[stage] for e in self.entries if stage in e.timings
            ]
            if samples:
                stats[stage] = {
                    "mean_ms": statistics.mean(samples),
                    "stddev_ms": statistics.pstdev(samples),
                    "count": len(samples),
                }
        return stats

    def usage_totals(self) -> dict[str, int]:
        totals: dict[str, int] = {}
        for entry in self.entries:
            for key, value in entry.usage.items():
                totals[key] = totals.get(key, 0) + value
        return totals

    def to_json(self) -> dict[str, Any]:
        return {
            "adapter": self.adapter,
            "size": self.size,
            "truncated": self.truncated,
            "successRate": self.success_rate,
            "classificationAccuracy": self.classification_accuracy,
            "predictionRate": self.prediction_rate,
            "enforcementRate": self.enforcement_rate,
            "ruleViolations": self.rule_violation_count,
            "usageTotals": self.usage_totals(),
            "stages": self.stage_stats(),
            "entries": [entry.to_json() for entry in self.entries],
        }


def run_suite(
    entries: Sequence[DatasetEntry],
    gateway,
    adapter_name: str = "deterministic",
    release_between: bool = True,
    translator=None,
) -> RunReport:
    """Submit every entry through the gateway and score the outcomes."""
    report = RunReport(adapter=adapter_name, started_at=time.time())
    try:
        for entry in entries:
            report.entries.append(
                _run_entry(entry, gateway, release_between, translator)
            )
    except KeyboardInterrupt:
        report.truncated = True
        logger.warning("run interrupted after %d entries", len(report.entries))
    report.finished_at = time.time()
    return report


def _run_entry(
    entry: DatasetEntry, gateway, release_between: bool, translator
) -> EntryResult:
    result = EntryResult(id=entry.id, truth=entry.slice_type.value)
    usage_before: dict[str, int] = {}
    if translator is not None and hasattr(translator, "total_usage"):
        usage_before = dict(translator.total_usage)

    record = None
    try:
        record = gateway.submit_intent(
            entry.text, conversation_id=entry.id, intent_key=entry.id
        )
    except OrionError as exc:
        record = getattr(exc, "record", None)
        result.failure = f"{type(exc).__name__}: {exc}"
        result.refused = isinstance(exc, TranslationFailed) and "refus" in str(exc)

    if record is not None:
        result.session_id = record.session_id
        result.policy_id = record.policy_id
        result.policy_created = record.policy_id is not None
        result.enforced = record.policy_state == "ENFORCED"
        result.predicted = record.slice_type.value if record.slice_type else None
        result.timings = record.timings.to_json()
        result.clarified = record.pending_clarification is not None

    calls = gateway.observed_tool_calls(entry.id)
    result.violations = check_tool_use_rules(
        entry, calls, refused=result.refused or result.clarified
    )

    if translator is not None and hasattr(translator, "total_usage"):
        for key, value in translator.total_usage.items():
            delta = value - usage_before.get(key, 0)
            if delta:
                result.usage[key] = delta

    if release_between and record is not None:
        try:
            if record.state is not LifecycleState.TERMINATED:
                gateway.lifecycle_command(record.intent_id, LifecycleEvent.TERMINATE)
        except OrionError as exc:
            logger.warning("cleanup of %s failed: %s", entry.id, exc)
    return result
