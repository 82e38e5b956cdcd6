"""
Error types shared by every component
All derive from ValueError so callers can keep catching ValueError
"""


class LexigraphError(ValueError):
    """Base class for every error raised by lexigraph components."""


class ParameterError(LexigraphError):
    """A parameter is outside the range its operation accepts."""


class CorpusFormatError(LexigraphError):
    """An input file line could not be parsed."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class UnknownKeyError(LexigraphError):
    """A bigram, term or node was requested that does not exist."""

    def __init__(self, kind: str, key):
        super().__init__(f"unknown {kind}: {key!r}")
        self.kind = kind
        self.key = key


class DegenerateGraphError(LexigraphError):
    """The graph carries no positive edge weight to optimise over."""

    def __init__(self, message: str = "degenerate graph"):
        super().__init__(message)


class ConvergenceError(LexigraphError):
    """An iterative method did not converge within its iteration budget."""

    def __init__(self, iterations: int, message: str = None):
        super().__init__(message or f"no convergence after {iterations} iterations")
        self.iterations = iterations


class StageError(LexigraphError):
    """A pipeline stage failed; the message is prefixed with the stage name."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"{stage}: {cause}")
        self.stage = stage
        self.cause = cause
