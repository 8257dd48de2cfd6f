"""Exception types mapped to CLI exit codes."""


class PreconditionError(ValueError):
    """An input or precondition fault (exit status 2)."""


class VerificationError(AssertionError):
    """An oracle or identity check disagreed (exit status 3)."""
