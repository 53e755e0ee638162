"""Exception taxonomy shared across services.

Every service-level failure maps to one of these types so the HTTP layers
can translate them to status codes uniformly (see orion.httputil).
"""


class OrionError(Exception):
    """Base class for all testbed errors."""


# -- domain ------------------------------------------------------------

class IllegalTransition(OrionError):
    """Lifecycle event not legal for the current state."""


# -- booking -----------------------------------------------------------

class AdmissionRefused(OrionError):
    """Active session count would exceed the capacity threshold (HTTP 429)."""


class SchemaViolation(OrionError):
    """Payload failed schema or requirement validation (HTTP 400)."""


class NotFound(OrionError):
    """Referenced entity does not exist (HTTP 404)."""


class AlreadyReleased(OrionError):
    """Session was released earlier."""


# -- tool bridge -------------------------------------------------------

class UnknownTool(OrionError):
    """Tool name not present in the registry."""


class TransportError(OrionError):
    """Peer service unreachable or the connection dropped mid-exchange."""


# -- gateway -----------------------------------------------------------

class TranslationFailed(OrionError):
    """Translator refused, gave up, or produced an unparseable decision."""


class ValidationFailed(OrionError):
    """Structured intent violates the domain invariants."""


class DownstreamError(OrionError):
    """Booking / composer / mediator failure, with cause attached."""

    def __init__(self, message: str, cause: Exception | None = None):
        super().__init__(message)
        self.cause = cause


class NoPendingClarification(OrionError):
    """answer_clarification called on a conversation with no open question."""


class UnknownIntent(OrionError):
    """Intent id not registered at the gateway."""


# -- composer ----------------------------------------------------------

class MissingThroughput(OrionError):
    """Neither per-slice nor per-device throughput stated; nothing to enforce."""


class InvalidIntent(OrionError):
    """Classified intent is structurally unusable."""


class MediatorUnavailable(OrionError):
    """Policy mediator unreachable; no partial state was created."""


# -- mediator ----------------------------------------------------------

class DuplicatePolicyId(OrionError):
    """(policytype_id, policy_id) pair already stored."""


class UnknownPolicy(OrionError):
    """Policy id not stored."""


class IllegalStatusTransition(OrionError):
    """Policy status update violates the CREATED -> {ENFORCED,NOT_ENFORCED} -> DELETED order."""


# -- xApp --------------------------------------------------------------

class Infeasible(OrionError):
    """Required PRB percentage exceeds 100."""


class InvalidInput(OrionError):
    """Quota computation called with a non-positive operand."""


class InvalidConfig(OrionError):
    """Cell configuration violates the radio parameter ranges."""


# -- e2 codec / transport ----------------------------------------------

class CodecError(OrionError):
    """Base for decode failures."""


class MalformedFrame(CodecError):
    """Bad magic, version, truncation, trailing garbage or missing field."""


class UnknownMessageType(CodecError):
    """Message type octet outside the defined set."""


class FieldRangeError(CodecError):
    """Decoded field value outside its legal range."""


class ConnectionLost(OrionError):
    """Framed-stream peer went away."""


class FrameTooLarge(OrionError):
    """Frame exceeds the 64 KiB cap."""


# -- harness -----------------------------------------------------------

class ServicesUnavailable(OrionError):
    """Pipeline services not reachable when a run starts."""
