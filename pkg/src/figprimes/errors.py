"""Shared exception types with a stable CLI exit-code mapping."""


class UsageError(Exception):
    """Bad parameters or configuration. CLI exit code 2."""


class ResourceLimitError(Exception):
    """A configured memory or size budget would be exceeded. CLI exit code 2."""


class ArithmeticGuardError(Exception):
    """A computation would leave the exact integer envelope. CLI exit code 3."""
