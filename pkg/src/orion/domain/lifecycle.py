"""Intent lifecycle state machine.

The default flow runs CREATED -> ACTIVATED -> MONITORING -> TERMINATED;
feedback arcs re-enter ACTIVATED after modification or suspension.
"""

from __future__ import annotations

from enum import Enum

from orion.errors import IllegalTransition


class LifecycleState(Enum):
    CREATED = "CREATED"
    ACTIVATED = "ACTIVATED"
    MONITORING = "MONITORING"
    MODIFIED = "MODIFIED"
    SUSPENDED = "SUSPENDED"
    TERMINATED = "TERMINATED"


class LifecycleEvent(Enum):
    ACTIVATE = "activate"
    MONITOR = "monitor"
    MODIFY = "modify"
    SUSPEND = "suspend"
    RESUME = "resume"
    TERMINATE = "terminate"


_S = LifecycleState
_E = LifecycleEvent

TRANSITIONS: dict[tuple[LifecycleState, LifecycleEvent], LifecycleState] = {
    (_S.CREATED, _E.ACTIVATE): _S.ACTIVATED,
    (_S.ACTIVATED, _E.MONITOR): _S.MONITORING,
    (_S.MONITORING, _E.MODIFY): _S.MODIFIED,
    # re-translation loop after a modification
    (_S.MODIFIED, _E.ACTIVATE): _S.ACTIVATED,
    (_S.ACTIVATED, _E.SUSPEND): _S.SUSPENDED,
    (_S.MONITORING, _E.SUSPEND): _S.SUSPENDED,
    (_S.MODIFIED, _E.SUSPEND): _S.SUSPENDED,
    (_S.SUSPENDED, _E.RESUME): _S.ACTIVATED,
}
for _state in LifecycleState:
    if _state is not _S.TERMINATED:
        TRANSITIONS[(_state, _E.TERMINATE)] = _S.TERMINATED


def lifecycle_transition(
    state: LifecycleState, event: LifecycleEvent
) -> LifecycleState:
    """Successor state for a legal (state, event) pair.

    Raises IllegalTransition otherwise; TERMINATED accepts no event.
    """
    try:
        return TRANSITIONS[(state, event)]
    except KeyError:
        raise IllegalTransition(
            f"event {event.value!r} not legal in state {state.value}"
        ) from None


def legal_events(state: LifecycleState) -> list[LifecycleEvent]:
    return [event for event in LifecycleEvent if (state, event) in TRANSITIONS]
