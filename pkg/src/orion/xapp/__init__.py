from orion.xapp.capacity import cell_capacity, symbols_per_second
from orion.xapp.enforcer import InventoryEntry, PolicyEnforcer, XappConfig
from orion.xapp.quota import compute_prb_percent
from orion.xapp.termination import E2Termination

__all__ = [
    "E2Termination",
    "InventoryEntry",
    "PolicyEnforcer",
    "XappConfig",
    "cell_capacity",
    "compute_prb_percent",
    "symbols_per_second",
]
