"""Exception hierarchy shared across the pipeline."""


class LecturesegError(Exception):
    """Base class for all pipeline errors."""


class ParseError(LecturesegError):
    """Malformed manifest or config line."""

    def __init__(self, message, line_no=None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class OrderError(LecturesegError):
    """Manifest frame ids or timestamps out of order."""

    def __init__(self, message, line_no=None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class DecodeError(LecturesegError):
    """Image file missing or undecodable."""


class DimensionError(LecturesegError):
    """Frame smaller than the supported minimum size."""


class DimensionMismatch(LecturesegError):
    """Two images expected to share dimensions do not."""


class NoBoardFound(LecturesegError):
    """Board flood found no green seed pixels."""


class NoSheetFound(LecturesegError):
    """Sheet flood found no light background seed pixels."""


class MediaTypeMismatch(LecturesegError):
    """Match attempted between frames of different or unmatchable media types."""


class InvalidProbabilities(LecturesegError):
    """Match outcome probabilities do not form a distribution."""


class DegenerateSystem(LecturesegError):
    """Regression input has too few or non-distinct sample points."""


class IoError(LecturesegError):
    """Index serialization failed; no partial output remains."""
