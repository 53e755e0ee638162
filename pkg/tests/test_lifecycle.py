import pytest

from orion.domain import LifecycleEvent, LifecycleState, legal_events, lifecycle_transition
from orion.errors import IllegalTransition

S = LifecycleState
E = LifecycleEvent

# Independent transcription of the legal-successor table; the implementation
# must agree on all 36 (state, event) pairs.
LEGAL = {
    (S.CREATED, E.ACTIVATE): S.ACTIVATED,
    (S.CREATED, E.TERMINATE): S.TERMINATED,
    (S.ACTIVATED, E.MONITOR): S.MONITORING,
    (S.ACTIVATED, E.SUSPEND): S.SUSPENDED,
    (S.ACTIVATED, E.TERMINATE): S.TERMINATED,
    (S.MONITORING, E.MODIFY): S.MODIFIED,
    (S.MONITORING, E.SUSPEND): S.SUSPENDED,
    (S.MONITORING, E.TERMINATE): S.TERMINATED,
    (S.MODIFIED, E.ACTIVATE): S.ACTIVATED,
    (S.MODIFIED, E.SUSPEND): S.SUSPENDED,
    (S.MODIFIED, E.TERMINATE): S.TERMINATED,
    (S.SUSPENDED, E.RESUME): S.ACTIVATED,
    (S.SUSPENDED, E.TERMINATE): S.TERMINATED,
}


@pytest.mark.parametrize("state", list(S))
@pytest.mark.parametrize("event", list(E))
def test_exhaustive_grid(state, event):
    if (state, event) in LEGAL:
        assert lifecycle_transition(state, event) == LEGAL[(state, event)]
    else:
        with pytest.raises(IllegalTransition):
            lifecycle_transition(state, event)


def test_default_flow():
    assert lifecycle_transition(S.CREATED, E.ACTIVATE) == S.ACTIVATED


def test_terminated_is_terminal():
    for event in E:
        with pytest.raises(IllegalTransition):
            lifecycle_transition(S.TERMINATED, event)


def test_feedback_arrow_modify():
    assert lifecycle_transition(S.MONITORING, E.MODIFY) == S.MODIFIED


def test_legal_events_projection():
    assert set(legal_events(S.ACTIVATED)) == {E.MONITOR, E.SUSPEND, E.TERMINATE}
    assert legal_events(S.TERMINATED) == []
