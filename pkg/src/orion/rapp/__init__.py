from orion.rapp.composer import IdSource, PolicyComposer, RappConfig

__all__ = ["IdSource", "PolicyComposer", "RappConfig"]
