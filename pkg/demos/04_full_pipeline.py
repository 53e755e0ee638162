"""The whole control loop on one desk: submit a natural-language intent,
watch it become a booking, an A1 policy, and an enforced PRB partition.

Run:  python3 demos/04_full_pipeline.py
"""

import json

from orion.domain import LifecycleEvent
from orion.harness import InProcessStack, StackConfig
from orion.rapp.composer import RappConfig

TRACE = (
    "Provision a URLLC slice in area X with 1 ms latency and 99.999% "
    "reliability and 10 Mbps downlink for 2 hours"
)


def main() -> None:
    config = StackConfig(booking_id_seed=42, rapp=RappConfig(id_seed=42))
    with InProcessStack(config=config) as stack:
        print("operator:", TRACE)
        record = stack.gateway.submit_intent(TRACE, intent_key="demo-1")

        print("\n== intent record ==")
        print(json.dumps(record.to_json(), indent=2))

        print("\n== what the booking service confirmed ==")
        booking = stack.store.get_session(record.session_id)
        print(json.dumps(booking.to_json(), indent=2))

        print("\n== the policy at the mediator ==")
        policy = stack.mediator.get_policy(record.policy_id, record.policytype_id)
        print(json.dumps(policy, indent=2))

        print("\n== the node's PRB ledger ==")
        print(json.dumps(stack.node.snapshot().to_json(), indent=2))

        print("\n== stage timings (ms) ==")
        for stage, value in record.timings.to_json().items():
            print(f"  {stage:<30} {value:8.3f}")

        print("\n== terminate: booking released, policy gone, ledger clear ==")
        stack.gateway.lifecycle_command("demo-1", LifecycleEvent.TERMINATE)
        stack.worker.join()
        print("ledger after terminate:", stack.node.snapshot().to_json()["allocations"])


if __name__ == "__main__":
    main()
