from orion.node.sim import E2NodeSim, PrbLedger

__all__ = ["E2NodeSim", "PrbLedger"]
