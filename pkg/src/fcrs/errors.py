"""Shared exception types.

Three failure modes exist across the package and the CLI maps them to exit
codes: bad input (exit 2), an exhausted search budget (exit 1, recoverable,
carries whatever partial result was computed), and a failed internal
self-check in a construction (exit 1, should never fire).
"""


class FcrsError(Exception):
    """Base class for all package errors."""


class InputError(FcrsError):
    """Malformed or precondition-violating input (file, word, flag, datum)."""


class BudgetExhausted(FcrsError):
    """A step or exploration budget ran out before the computation finished.

    The ``partial`` attribute holds whatever was computed so far (a partial
    reduction trace, a partial report), or None.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class ConstructionError(FcrsError):
    """A construction's own verification failed; indicates a bug, not bad input.

    ``report`` carries the offending verification report when available.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
