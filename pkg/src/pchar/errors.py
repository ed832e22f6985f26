"""Exception types shared across the package."""


class ResourceLimitError(RuntimeError):
    """A computation would exceed a configured cap (element count, set size, budget)."""


class GroupFileError(ValueError):
    """A group file failed to parse; carries a 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotACharacterError(ValueError):
    """A class function handed to decompose() is not a nonnegative integer
    combination of the table rows."""


class TableConsistencyError(RuntimeError):
    """An internal exactness check failed; signals a bug in table computation,
    never bad user input."""
