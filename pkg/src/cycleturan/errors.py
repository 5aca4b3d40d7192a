"""Exception types raised across the package."""


class CycleTuranError(Exception):
    """Base class for all package errors."""


class ValidationError(CycleTuranError, ValueError):
    """Bad input parameters; the CLI maps these to exit code 2."""


class DuplicateEdge(ValidationError):
    pass


class BadArity(ValidationError):
    pass


class VertexOutOfRange(ValidationError):
    pass


class BadShadowSize(ValidationError):
    pass


class TooManyEdges(ValidationError):
    pass


class UnknownEdgeId(ValidationError):
    pass


class TooFewVertices(ValidationError):
    pass


class CodegreeTooSmall(ValidationError):
    def __init__(self, message, sigma=None):
        super().__init__(message)
        self.sigma = sigma


class DanglingShadow(ValidationError):
    def __init__(self, message, shadow_edge=None):
        super().__init__(message)
        self.shadow_edge = shadow_edge


class TooSparse(ValidationError):
    pass


class HypothesisViolated(ValidationError):
    def __init__(self, message, j=None, lhs=None, rhs=None):
        super().__init__(message)
        self.j = j
        self.lhs = lhs
        self.rhs = rhs


class Undefined(ValidationError):
    pass


class EmptyInput(ValidationError):
    pass


class HgFormatError(ValidationError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class TooLarge(CycleTuranError):
    """An exhaustive routine would exceed its configured cap."""


class TooManyCopies(TooLarge):
    pass


class GroundTooLargeForVerification(TooLarge):
    pass


class PartitionRetryExhausted(CycleTuranError):
    pass


class BudgetExceeded(CycleTuranError):
    """A budgeted search stopped early; partial results may be attached."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class Truncated(BudgetExceeded):
    pass
