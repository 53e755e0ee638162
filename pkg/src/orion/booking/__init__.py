from orion.booking.core import BookingStore

__all__ = ["BookingStore"]
