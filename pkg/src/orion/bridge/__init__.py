from orion.bridge.core import (
    FieldSpec,
    ToolCall,
    ToolDescriptor,
    ToolResult,
    ToolServer,
    booking_executor,
    create_session_descriptor,
)

__all__ = [
    "FieldSpec",
    "ToolCall",
    "ToolDescriptor",
    "ToolResult",
    "ToolServer",
    "booking_executor",
    "create_session_descriptor",
]
