"""Report files: machine JSON, per-entry CSV, and a text summary table."""

from __future__ import annotations

import csv
import json
from pathlib import Path

from orion.domain import STAGE_NAMES
from orion.harness.runner import RunReport

CSV_COLUMNS = [
    "id",
    "truth",
    "predicted",
    "correct",
    "policy_created",
    "enforced",
    "refused",
    "violations",
    "failure",
    *STAGE_NAMES,
]


def emit_report(report: RunReport, out_dir: str | Path) -> dict[str, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "json": out / "report.json",
        "csv": out / "entries.csv",
        "txt": out / "summary.txt",
    }

    with paths["json"].open("w", encoding="utf-8") as fh:
        json.dump(report.to_json(), fh, indent=2, sort_keys=False)
        fh.write("\n")

    with paths["csv"].open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for entry in report.entries:
            writer.writerow(
                [
                    entry.id,
                    entry.truth,
                    entry.predicted or "",
                    "" if entry.correct is None else str(entry.correct).lower(),
                    str(entry.policy_created).lower(),
                    str(entry.enforced).lower(),
                    str(entry.refused).lower(),
                    " | ".join(entry.violations),
                    entry.failure or "",
                    *[
                        f"{entry.timings[stage]:.3f}" if stage in entry.timings else ""
                        for stage in STAGE_NAMES
                    ],
                ]
            )

    with paths["txt"].open("w", encoding="utf-8") as fh:
        fh.write(render_summary(report))

    return paths


def render_summary(report: RunReport) -> str:
    usage = report.usage_totals()
    lines = [
        "Intent processing summary",
        "=========================",
        f"Adapter:                 {report.adapter}",
        f"N:                       {report.size}"
        + ("  (TRUNCATED)" if report.truncated else ""),
        f"Success (%):             {report.success_rate * 100:.1f}",
        f"Classification acc (%):  {report.classification_accuracy * 100:.1f}"
        f"  over {report.prediction_count}/{report.size} predictions",
        f"Enforced (%):            {report.enforcement_rate * 100:.1f}",
        f"Rule violations:         {report.rule_violation_count}",
    ]
    if usage:
        lines.append(
            "Tokens (total):          "
            + ", ".join(f"{k}={v}" for k, v in sorted(usage.items()))
        )
    lines.append("")
    lines.append("Stage timings (ms, mean +/- stddev):")
    stats = report.stage_stats()
    for stage in STAGE_NAMES:
        if stage in stats:
            s = stats[stage]
            lines.append(
                f"  {stage:<28} {s['mean_ms']:>10.3f} +/- {s['stddev_ms']:<10.3f}"
                f" (n={s['count']})"
            )
        else:
            lines.append(f"  {stage:<28} {'n/a':>10}")
    lines.append("")
    return "\n".join(lines)
