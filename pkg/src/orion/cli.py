"""Command line entry point.

    orion gen-dataset --seed 7 --out intents.jsonl
    orion run --dataset intents.jsonl --adapter deterministic --report out/
    orion check-rules --dataset intents.jsonl --transcript out/tool_calls.jsonl
    orion demo --up
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from orion.bridge.core import ToolCall
from orion.harness.dataset import generate_dataset, load_dataset, write_dataset
from orion.harness.report import emit_report, render_summary
from orion.harness.rules import check_tool_use_rules
from orion.harness.runner import run_suite
from orion.harness.stack import HttpStack, InProcessStack, StackConfig
from orion.jsonutil import canonical_dumps
from orion.rapp.composer import RappConfig

logger = logging.getLogger(__name__)


def _build_translator(args):
    if args.adapter == "deterministic":
        from orion.gateway.translator import DeterministicTranslator

        return DeterministicTranslator()
    if args.adapter == "replay":
        if not args.transcript:
            raise SystemExit("--transcript is required with the replay adapter")
        from orion.gateway.translator import TranscriptReplayTranslator

        return TranscriptReplayTranslator.from_file(args.transcript)
    import os

    from orion.gateway.translator import LiveModelTranslator

    return LiveModelTranslator(
        base_url=args.live_url,
        model=args.live_model,
        api_key=os.environ.get(args.live_key_env) if args.live_key_env else None,
    )


def cmd_gen_dataset(args) -> int:
    entries = generate_dataset(args.seed)
    write_dataset(entries, args.out)
    print(f"wrote {len(entries)} intents to {args.out}")
    return 0


def cmd_run(args) -> int:
    entries = load_dataset(args.dataset)
    translator = _build_translator(args)
    config = StackConfig(
        booking_threshold=args.threshold,
        booking_id_seed=args.id_seed,
        rapp=RappConfig(id_seed=args.id_seed),
    )
    stack_cls = HttpStack if args.transport == "http" else InProcessStack
    kwargs = {"serve_gateway": False} if args.transport == "http" else {}
    started = time.time()
    with stack_cls(translator=translator, config=config, **kwargs) as stack:
        report = run_suite(
            entries,
            stack.gateway,
            adapter_name=args.adapter,
            release_between=not args.keep_sessions,
            translator=translator,
        )
        paths = emit_report(report, args.report)
        transcript_path = Path(args.report) / "tool_calls.jsonl"
        with transcript_path.open("w", encoding="utf-8") as fh:
            for entry in entries:
                calls = stack.gateway.observed_tool_calls(entry.id)
                result = next((e for e in report.entries if e.id == entry.id), None)
                fh.write(
                    canonical_dumps(
                        {
                            "key": entry.id,
                            "calls": [call.to_json() for call in calls],
                            "refused": bool(result and result.refused),
                        }
                    )
                    + "\n"
                )
    print(render_summary(report))
    print(f"elapsed: {time.time() - started:.1f}s")
    print("report files:", ", ".join(str(p) for p in paths.values()))
    return 0 if report.success_rate == 1.0 else 1


def cmd_check_rules(args) -> int:
    entries = {e.id: e for e in load_dataset(args.dataset)}
    total = 0
    flagged = 0
    with open(args.transcript, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            record = json.loads(line)
            entry = entries.get(record["key"])
            if entry is None:
                print(f"{record['key']}: not in dataset, skipped")
                continue
            calls = [ToolCall.from_json(c) for c in record.get("calls", [])]
            violations = check_tool_use_rules(
                entry, calls, refused=record.get("refused", False)
            )
            total += 1
            if violations:
                flagged += 1
                for violation in violations:
                    print(f"{entry.id}: {violation}")
    print(f"checked {total} entries, {flagged} with violations")
    return 0


def cmd_demo(args) -> int:
    if not args.up:
        print("nothing to do; pass --up to launch the stack")
        return 0
    config = StackConfig(booking_threshold=args.threshold)
    stack = HttpStack(config=config, serve_gateway=True)
    print("services up:")
    for name, url in stack.urls().items():
        print(f"  {name:12s} {url}")
    print("e2 termination:", f"{stack.termination.host}:{stack.termination.port}")
    print("submit an intent, e.g.:")
    gateway_url = stack.urls()["gateway"]
    print(
        f"  curl -s {gateway_url}/intent -H 'Content-Type: application/json' "
        "-d '{\"text\": \"Provision a URLLC slice in area X with 1 ms latency "
        "and 99.999% reliability for 2 hours\"}'"
    )
    print("Ctrl-C to stop")
    try:
        while True:
            time.sleep(1)
    except KeyboardInterrupt:
        print("shutting down")
        stack.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orion", description="Desk-scale intent pipeline testbed"
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen-dataset", help="generate the evaluation corpus")
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=cmd_gen_dataset)

    run = sub.add_parser("run", help="drive a dataset through the pipeline")
    run.add_argument("--dataset", required=True)
    run.add_argument(
        "--adapter",
        choices=("deterministic", "replay", "live"),
        default="deterministic",
    )
    run.add_argument("--report", required=True, help="output directory")
    run.add_argument("--transport", choices=("inproc", "http"), default="inproc")
    run.add_argument("--threshold", type=int, default=10,
                     help="booking capacity threshold")
    run.add_argument("--id-seed", type=int, default=None,
                     help="seed for session/policy id sources")
    run.add_argument("--keep-sessions", action="store_true",
                     help="do not terminate intents between entries")
    run.add_argument("--transcript", help="decision transcript (replay adapter)")
    run.add_argument("--live-url", default="http://localhost:8000/v1/chat/completions")
    run.add_argument("--live-model", default="")
    run.add_argument("--live-key-env", default=None)
    run.set_defaults(func=cmd_run)

    check = sub.add_parser("check-rules", help="judge recorded tool calls")
    check.add_argument("--dataset", required=True)
    check.add_argument("--transcript", required=True)
    check.set_defaults(func=cmd_check_rules)

    demo = sub.add_parser("demo", help="launch all services with a bundled config")
    demo.add_argument("--up", action="store_true")
    demo.add_argument("--threshold", type=int, default=10)
    demo.set_defaults(func=cmd_demo)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
    )
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
