"""Desk-scale intent orchestration testbed.

Natural-language slice intents are translated through a tool-invocation
protocol into slice bookings, composed into A1 policies, converted to PRB
quotas and enforced on a simulated E2 node.  See README.md for the map of
subpackages and the evaluation harness.
"""

__version__ = "0.1.0"
