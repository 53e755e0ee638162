"""Required PRB percentage for a requested throughput.

percent = ceil(requested / capacity * 100), computed with exact integer
arithmetic so boundary cases never fall prey to float rounding.
"""

from __future__ import annotations

from orion.errors import Infeasible, InvalidInput


def compute_prb_percent(requested_bps: int, capacity_bps: int) -> int:
    if requested_bps <= 0:
        raise InvalidInput("requested_bps must be positive")
    if capacity_bps <= 0:
        raise InvalidInput("capacity_bps must be positive")
    percent = -(-requested_bps * 100 // capacity_bps)
    if percent > 100:
        raise Infeasible(
            f"required {percent}% of PRBs exceeds the whole cell "
            f"({requested_bps} bps over {capacity_bps} bps)"
        )
    return percent
