"""Seeded generator for the 100-intent evaluation corpus.

20 high-throughput entries (100-500 Mbps downlink), 20 low-latency
entries (1-7 ms budgets, >= 99.9% reliability), 60 massive-IoT entries
(10^3-10^6 devices) -- the IoT class is oversampled to mirror dense
deployment heterogeneity.  Every text is templated so that exactly its
ground-truth fields are stated, no more, no less; the same seed always
yields the same file, byte for byte.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable

from orion.domain import SliceRequirements, SliceType
from orion.jsonutil import camel, canonical_dumps

EMBB_COUNT = 20
URLLC_COUNT = 20
MMTC_COUNT = 60

_AREAS = (
    "zone-1", "zone-7", "district-4", "district-9", "campus-east",
    "campus-west", "harbor-3", "grid-12", "stadium-north", "airport-2",
)

_EMBB_SCENARIOS = ("video journalism", "cloud gaming", "4K media streaming")
_URLLC_SCENARIOS = ("autonomous robotics", "remote surgery", "industrial automation")
_MMTC_SCENARIOS = ("smart city sensors", "environmental monitoring", "utility metering")

# per-device rates small enough that count x rate stays enforceable on
# the default cell
_MMTC_RATE_KBPS = (1, 2, 5, 10, 20, 50)
_MMTC_AGGREGATE_CAP_BPS = 2 * 10**9


@dataclass(frozen=True)
class DatasetEntry:
    id: str
    text: str
    slice_type: SliceType
    fields: dict[str, Any] = field(default_factory=dict)

    def ground_truth_requirements(self) -> SliceRequirements:
        return SliceRequirements(**self.fields)

    def to_json(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "text": self.text,
            "groundTruth": {
                "sliceType": self.slice_type.value,
                "fields": {camel(k): v for k, v in self.fields.items()},
            },
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "DatasetEntry":
        truth = data["groundTruth"]
        req = SliceRequirements.from_json(truth["fields"])
        return cls(
            id=data["id"],
            text=data["text"],
            slice_type=SliceType.parse(truth["sliceType"]),
            fields=req.stated_fields(),
        )


def _duration_clause(rng: random.Random, fields: dict) -> str:
    choice = rng.random()
    if choice < 0.25:
        hours = rng.randint(1, 12)
        fields["duration_s"] = hours * 3600
        return f" for {hours} hours"
    if choice < 0.4:
        days = rng.randint(1, 14)
        fields["duration_s"] = days * 86400
        return f" for {days} days"
    return ""


def _area_clause(rng: random.Random, fields: dict) -> str:
    if rng.random() < 0.5:
        area = rng.choice(_AREAS)
        fields["area_of_service"] = area
        return f" in area {area}"
    return ""


def _embb_entry(rng: random.Random) -> tuple[str, dict]:
    scenario = rng.choice(_EMBB_SCENARIOS)
    mbps = rng.randint(100, 500)
    fields: dict[str, Any] = {"max_dl_thpt_per_slice_bps": mbps * 10**6}
    area = _area_clause(rng, fields)
    duration = _duration_clause(rng, fields)
    templates = (
        f"Provision a slice for {scenario} delivering {mbps} Mbps downlink"
        f"{area}{duration}.",
        f"We are hosting {scenario} and need a sustained {mbps} Mbps downlink"
        f" feed{area}{duration}.",
        f"Set up {scenario} coverage at {mbps} Mbps downlink with moderate"
        f" latency{area}{duration}.",
    )
    return rng.choice(templates), fields


def _urllc_entry(rng: random.Random) -> tuple[str, dict]:
    scenario = rng.choice(_URLLC_SCENARIOS)
    delay_ms = rng.randint(1, 7)
    reliability = rng.choice((99.9, 99.95, 99.99, 99.999))
    mbps = rng.randint(5, 20)
    fields: dict[str, Any] = {
        "dl_delay_budget_ms": float(delay_ms),
        "reliability_pct": reliability,
        "max_dl_thpt_per_slice_bps": mbps * 10**6,
    }
    area = _area_clause(rng, fields)
    duration = _duration_clause(rng, fields)
    templates = (
        f"Provision a URLLC slice for {scenario} with a {delay_ms} ms delay"
        f" budget, {reliability}% reliability and {mbps} Mbps downlink"
        f"{area}{duration}.",
        f"Our {scenario} line needs {delay_ms} ms latency, {reliability}%"
        f" reliability and {mbps} Mbps downlink{area}{duration}.",
        f"Deploy connectivity for {scenario}: {delay_ms} ms packet delay"
        f" budget, {reliability}% reliability, {mbps} Mbps downlink"
        f"{area}{duration}.",
    )
    return rng.choice(templates), fields


def _format_count(rng: random.Random, count: int) -> str:
    if count == 1_000_000:
        return "1 million"
    if count % 1000 == 0 and count < 1_000_000 and rng.random() < 0.3:
        return f"{count // 1000}k"
    if rng.random() < 0.5:
        return f"{count:,}"
    return str(count)


def _mmtc_entry(rng: random.Random) -> tuple[str, dict]:
    scenario = rng.choice(_MMTC_SCENARIOS)
    noun = {
        "smart city sensors": "sensors",
        "environmental monitoring": "sensors",
        "utility metering": "meters",
    }[scenario]
    exponent = rng.uniform(3, 6)
    count = min(1_000_000, max(1000, int(round(10**exponent, -2))))
    viable = [
        k for k in _MMTC_RATE_KBPS if count * k * 1000 <= _MMTC_AGGREGATE_CAP_BPS
    ]
    kbps = rng.choice(viable)
    fields: dict[str, Any] = {
        "device_count": count,
        "max_dl_thpt_per_device_bps": kbps * 1000,
    }
    uplink = ""
    if rng.random() < 0.5:
        ul_viable = [k for k in _MMTC_RATE_KBPS if k <= kbps]
        ul_kbps = rng.choice(ul_viable)
        fields["max_ul_thpt_per_device_bps"] = ul_kbps * 1000
        uplink = f" and {ul_kbps} kbps uplink per device"
    count_text = _format_count(rng, count)
    flavor = rng.choice(
        ("", " reporting every 15 minutes", " with mixed duty cycles")
    )
    area = _area_clause(rng, fields)
    duration = _duration_clause(rng, fields)
    templates = (
        f"Book connectivity for {count_text} {noun} doing {scenario} at"
        f" {kbps} kbps downlink per device{uplink}{flavor}{area}{duration}.",
        f"We are rolling out {scenario}: {count_text} {noun} needing"
        f" {kbps} kbps downlink per device{uplink}{flavor}{area}{duration}.",
    )
    return rng.choice(templates), fields


def generate_dataset(seed: int) -> list[DatasetEntry]:
    rng = random.Random(seed)
    raw: list[tuple[SliceType, str, dict]] = []
    for _ in range(EMBB_COUNT):
        text, fields = _embb_entry(rng)
        raw.append((SliceType.EMBB, text, fields))
    for _ in range(URLLC_COUNT):
        text, fields = _urllc_entry(rng)
        raw.append((SliceType.URLLC, text, fields))
    for _ in range(MMTC_COUNT):
        text, fields = _mmtc_entry(rng)
        raw.append((SliceType.MMTC, text, fields))
    rng.shuffle(raw)
    return [
        DatasetEntry(
            id=f"intent-{index:03d}", text=text, slice_type=slice_type, fields=fields
        )
        for index, (slice_type, text, fields) in enumerate(raw, start=1)
    ]


def write_dataset(entries: Iterable[DatasetEntry], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for entry in entries:
            fh.write(canonical_dumps(entry.to_json()) + "\n")


def load_dataset(path: str | Path) -> list[DatasetEntry]:
    entries = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                entries.append(DatasetEntry.from_json(json.loads(line)))
    return entries
