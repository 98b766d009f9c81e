"""Exception hierarchy shared across the toolkit.

The CLI maps each class to a distinct exit code, so raise the most
specific one available.
"""


class VariaqError(Exception):
    """Base class for all toolkit errors."""


class SnapshotParseError(VariaqError):
    """Calibration document is malformed (bad JSON, missing or mistyped keys)."""


class QasmError(VariaqError):
    """Circuit text could not be parsed."""


class QasmSyntaxError(QasmError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class UnsupportedConstructError(QasmError):
    def __init__(self, construct: str, line: int):
        super().__init__(f"line {line}: unsupported construct: {construct}")
        self.construct = construct
        self.line = line


class ValidationError(VariaqError):
    """Data violates a model invariant (range, connectivity, duplicates)."""


class SnapshotValidationError(ValidationError):
    pass


class TopologyMismatchError(ValidationError):
    """Snapshots in a series do not share qubit count and link set."""


class ScalingError(ValidationError):
    """Scaling error rates would push a probability to 1 or beyond."""


class CapacityError(VariaqError):
    """Circuit or partition needs more qubits than the device provides."""


class GuardError(VariaqError):
    """An exhaustive search would exceed its enumeration guard."""
