from orion.domain.lifecycle import (
    LifecycleEvent,
    LifecycleState,
    legal_events,
    lifecycle_transition,
)
from orion.domain.types import (
    STAGE_NAMES,
    A1Policy,
    CellConfig,
    ClassifiedIntent,
    IntentRecord,
    PrbQuota,
    SessionBooking,
    SessionStatus,
    SliceId,
    SliceRequirements,
    SliceSlaObjectives,
    SliceType,
    StageTimings,
    n_prb_for,
)
from orion.domain.validation import sst_for, validate_requirements

__all__ = [
    "A1Policy",
    "CellConfig",
    "ClassifiedIntent",
    "IntentRecord",
    "LifecycleEvent",
    "LifecycleState",
    "PrbQuota",
    "STAGE_NAMES",
    "SessionBooking",
    "SessionStatus",
    "SliceId",
    "SliceRequirements",
    "SliceSlaObjectives",
    "SliceType",
    "StageTimings",
    "legal_events",
    "lifecycle_transition",
    "n_prb_for",
    "sst_for",
    "validate_requirements",
]
