"""Maximum cell capacity from the node's radio configuration.

capacity_bps = n_prb * 12 * symbols_per_second(mu) * modulation_bits
               * mimo_layers * (1 - overhead_fraction)

This is the standard approximate data-rate shape restricted to the
advertised inputs; coding rate and scaling factor are folded into
overhead_fraction.  Overhead is interpreted as an exact decimal so the
result is deterministic integer bps.
"""

from __future__ import annotations

from fractions import Fraction

from orion.domain import CellConfig
from orion.errors import InvalidConfig

SUBCARRIERS_PER_PRB = 12


def symbols_per_second(numerology_mu: int) -> int:
    """OFDM symbols per second for numerology mu: 14 symbols per slot,
    1000 * 2^mu slots per second."""
    if not 0 <= numerology_mu <= 4:
        raise InvalidConfig(f"numerology {numerology_mu} outside 0..4")
    return 14 * 1000 * (2**numerology_mu)


def cell_capacity(cfg: CellConfig, direction: str = "dl") -> int:
    """Deterministic capacity in bits/second for one direction.

    The model is direction-symmetric; the parameter exists so callers
    state which objective they are sizing against.
    """
    if direction not in ("dl", "ul"):
        raise InvalidConfig(f"direction must be 'dl' or 'ul', got {direction!r}")
    raw = (
        cfg.n_prb
        * SUBCARRIERS_PER_PRB
        * symbols_per_second(cfg.numerology_mu)
        * cfg.modulation_bits
        * cfg.mimo_layers
    )
    usable = Fraction(raw) * (1 - Fraction(str(cfg.overhead_fraction)))
    capacity = int(usable)
    if capacity <= 0:
        raise InvalidConfig("derived capacity must be strictly positive")
    return capacity
