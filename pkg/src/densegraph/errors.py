"""Exception types shared across the package."""


class GraphAnalysisError(Exception):
    """Base class for every analysis error raised by this package."""


class EdgeListParseError(GraphAnalysisError):
    """A malformed edge-list or registry line."""

    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class UndefinedMetricError(GraphAnalysisError):
    """An index is mathematically undefined for the given input."""


class DegenerateInputError(GraphAnalysisError):
    """The input admits no meaningful result (e.g. zero spread where a range is needed)."""


class IsolatedVertexError(GraphAnalysisError):
    """An isolated vertex appeared where positive degree is required."""


class NonEuclideanInputError(GraphAnalysisError):
    """A dissimilarity matrix is too far from Euclidean-embeddable to trust."""


class EigenSolverError(GraphAnalysisError):
    """An eigendecomposition failed to converge."""
