"""Exception types shared across the package."""


class LineageRecError(Exception):
    """Base class for all package-specific errors."""


class NotFoundError(LineageRecError):
    """A node, file, or record referenced by id does not exist."""


class IngestError(LineageRecError):
    """Malformed or inconsistent input data.

    Carries the 1-based line number of the offending record when the
    problem is attributable to a single input line.
    """

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ConsistencyError(LineageRecError):
    """Artifacts that must describe the same node set disagree."""


class TrainingDivergedError(LineageRecError):
    """Loss became non-finite during training."""

    def __init__(self, epoch):
        super().__init__(f"non-finite loss at epoch {epoch}")
        self.epoch = epoch
