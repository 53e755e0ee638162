from orion.mediator.core import A1Mediator, PolicyState, PolicyStatus, Subscriber

__all__ = ["A1Mediator", "PolicyState", "PolicyStatus", "Subscriber"]
