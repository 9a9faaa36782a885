"""
Root exception types.

Every error raised by the library derives from one of two roots. The command
line maps ``UsageError`` to exit code 1 and ``VerificationFailure`` to exit
code 2; anything else is a genuine crash.
"""


class UsageError(ValueError):
    """The caller supplied input outside the domain of an operation."""
    pass


class VerificationFailure(RuntimeError):
    """An exact check that must hold did not hold."""
    pass
