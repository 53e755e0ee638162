from orion.gateway.pipeline import GatewayConfig, IntentGateway
from orion.gateway.translator import (
    Conversation,
    DeterministicTranslator,
    LiveModelTranslator,
    TranscriptReplayTranslator,
    TranslatorDecision,
    extract_requirements,
    load_system_prompt,
)

__all__ = [
    "Conversation",
    "DeterministicTranslator",
    "GatewayConfig",
    "IntentGateway",
    "LiveModelTranslator",
    "TranscriptReplayTranslator",
    "TranslatorDecision",
    "extract_requirements",
    "load_system_prompt",
]
