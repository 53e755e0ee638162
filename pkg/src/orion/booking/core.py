"""Mock slice-booking service with admission control.

In-memory session store: a request is admitted only while the number of
ACTIVE sessions stays below the capacity threshold; admission is an
atomic check-and-insert, so racing creators can never oversubscribe.
Session ids are 128-bit values rendered as lowercase hex and never
reused, even after release.
"""

from __future__ import annotations

import random
import secrets
import threading
import time
from typing import Optional

from orion.domain import (
    SessionBooking,
    SessionStatus,
    SliceRequirements,
    validate_requirements,
)
from orion.errors import AdmissionRefused, AlreadyReleased, NotFound, SchemaViolation

DEFAULT_CAPACITY_THRESHOLD = 10


class BookingStore:
    def __init__(
        self,
        capacity_threshold: int = DEFAULT_CAPACITY_THRESHOLD,
        id_seed: Optional[int] = None,
    ):
        if capacity_threshold < 1:
            raise ValueError("capacity_threshold must be positive")
        self.capacity_threshold = capacity_threshold
        self._sessions: dict[str, SessionBooking] = {}
        self._lock = threading.Lock()
        self._rng = random.Random(id_seed) if id_seed is not None else None

    def _mint_id(self) -> str:
        if self._rng is not None:
            return f"{self._rng.getrandbits(128):032x}"
        return secrets.token_hex(16)

    def active_count(self) -> int:
        with self._lock:
            return sum(
                1
                for booking in self._sessions.values()
                if booking.status is SessionStatus.ACTIVE
            )

    def create_session(self, req: SliceRequirements) -> SessionBooking:
        violations = validate_requirements(req)
        if violations:
            raise SchemaViolation("; ".join(violations))
        with self._lock:
            active = sum(
                1
                for booking in self._sessions.values()
                if booking.status is SessionStatus.ACTIVE
            )
            if active >= self.capacity_threshold:
                raise AdmissionRefused(
                    f"{active} active sessions at threshold {self.capacity_threshold}"
                )
            session_id = self._mint_id()
            while session_id in self._sessions:  # 128-bit collisions, but cheap
                session_id = self._mint_id()
            booking = SessionBooking(
                session_id=session_id,
                requirements=req,
                created_at=time.time(),
                status=SessionStatus.ACTIVE,
            )
            self._sessions[session_id] = booking
            return booking

    def release_session(self, session_id: str) -> SessionBooking:
        with self._lock:
            booking = self._sessions.get(session_id)
            if booking is None:
                raise NotFound(f"session {session_id}")
            if booking.status is SessionStatus.RELEASED:
                raise AlreadyReleased(f"session {session_id}")
            released = SessionBooking(
                session_id=booking.session_id,
                requirements=booking.requirements,
                created_at=booking.created_at,
                status=SessionStatus.RELEASED,
            )
            self._sessions[session_id] = released
            return released

    def get_session(self, session_id: str) -> SessionBooking:
        with self._lock:
            booking = self._sessions.get(session_id)
            if booking is None:
                raise NotFound(f"session {session_id}")
            return booking

    def list_sessions(self) -> list[SessionBooking]:
        with self._lock:
            return list(self._sessions.values())
