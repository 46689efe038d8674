"""Shared exception types."""


class ComputationLimitError(RuntimeError):
    """A computation was refused or aborted because it exceeds a configured limit."""
