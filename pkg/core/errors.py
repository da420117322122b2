"""
Exception types for the Rewrite Checker
"""


class RewriteCheckerError(Exception):
    """Base class for hard failures (exit code 1 unless stated otherwise)"""


class TypingError(RewriteCheckerError):
    """A string, step or whisker violates dom/cod adjacency"""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class PresentationError(RewriteCheckerError):
    """build_presentation found one or more bad declarations"""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


class SpecParseError(RewriteCheckerError):
    """Spec-file syntax or typing problem, annotated with its position"""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f"line {line}" if line is not None else "input"
        if column is not None:
            where += f", column {column}"
        super().__init__(f"{where}: {message}")


class UniverseError(RewriteCheckerError):
    """Candidate outside its universe, or universe not closed under the rules"""


class NotDisjointError(RewriteCheckerError):
    """Two adjacent steps cannot be exchanged because their redexes interact"""
