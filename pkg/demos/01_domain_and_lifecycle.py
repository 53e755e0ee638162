"""Walk through the shared domain types and the intent lifecycle.

Run:  python3 demos/01_domain_and_lifecycle.py
"""

from orion.domain import (
    LifecycleEvent,
    LifecycleState,
    SliceRequirements,
    legal_events,
    lifecycle_transition,
    validate_requirements,
)
from orion.jsonutil import canonical_dumps


def main() -> None:
    print("== canonical serialization ==")
    req = SliceRequirements(
        area_of_service="campus-east",
        dl_delay_budget_ms=1.0,
        reliability_pct=99.999,
        duration_s=7200,
    )
    print(canonical_dumps(req.to_json()))
    print("note the explicit nulls: unstated fields stay null end to end\n")

    print("== verdict-returning validation ==")
    good = validate_requirements(req)
    print(f"valid requirements -> {good!r}")
    bad = validate_requirements(
        SliceRequirements(dl_delay_budget_ms=-1, packet_error_rate=1.5)
    )
    for violation in bad:
        print("violation:", violation)
    print()

    print("== lifecycle walk (default flow plus a feedback loop) ==")
    state = LifecycleState.CREATED
    for event in (
        LifecycleEvent.ACTIVATE,
        LifecycleEvent.MONITOR,
        LifecycleEvent.MODIFY,
        LifecycleEvent.ACTIVATE,  # re-translation loop
        LifecycleEvent.SUSPEND,
        LifecycleEvent.RESUME,
        LifecycleEvent.TERMINATE,
    ):
        new_state = lifecycle_transition(state, event)
        print(f"{state.value:10s} --{event.value:9s}--> {new_state.value}")
        state = new_state
    print("legal events from TERMINATED:", legal_events(state) or "none (terminal)")


if __name__ == "__main__":
    main()
