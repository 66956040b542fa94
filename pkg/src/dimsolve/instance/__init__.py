from ._base import Instance, InstanceUsageError, Label, Labeling, Violation

__all__ = [
    "Instance",
    "InstanceUsageError",
    "Label",
    "Labeling",
    "Violation",
]
