from orion.harness.dataset import DatasetEntry, generate_dataset, load_dataset, write_dataset
from orion.harness.rules import check_tool_use_rules
from orion.harness.runner import RunReport, run_suite
from orion.harness.stack import HttpStack, InProcessStack, StackConfig

__all__ = [
    "DatasetEntry",
    "HttpStack",
    "InProcessStack",
    "RunReport",
    "StackConfig",
    "check_tool_use_rules",
    "generate_dataset",
    "load_dataset",
    "run_suite",
    "write_dataset",
]
