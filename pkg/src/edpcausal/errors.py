"""Exception hierarchy shared across the package.

Configuration / usage problems derive from ``UsageError``; numerical and
runtime failures derive from ``RuntimeFailure``.  The CLI maps the former to
exit code 1 and the latter to exit code 2.
"""


class EdpError(Exception):
    """Base class for all package errors."""


class UsageError(EdpError):
    """Bad configuration, schema, or input file."""


class RuntimeFailure(EdpError):
    """Numerical or runtime failure during estimation."""


class SchemaError(UsageError):
    pass


class ParseError(UsageError):
    """Malformed input row; carries the 1-based data-row index."""

    def __init__(self, row: int, message: str):
        super().__init__(f"row {row}: {message}")
        self.row = row


class ValidationError(UsageError):
    pass


class ConfigError(UsageError):
    pass


class DegenerateColumnError(RuntimeFailure):
    pass


class ConvergenceError(RuntimeFailure):
    """IRLS failed to converge; carries the last iterate."""

    def __init__(self, message: str, last_iterate=None):
        super().__init__(message)
        self.last_iterate = last_iterate


class SeparationError(RuntimeFailure):
    pass


class NumericalUnderflowError(RuntimeFailure):
    pass


class PositivityError(RuntimeFailure):
    pass


class DegenerateTraceError(RuntimeFailure):
    pass


class BracketError(RuntimeFailure):
    pass
