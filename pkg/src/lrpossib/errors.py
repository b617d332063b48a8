"""Exception hierarchy shared across the package.

Every error raised on purpose derives from LrPossibError so callers can
catch the package's failures without also swallowing programming bugs.
The split matters to the command line tool: InputError maps to exit code
2, ConvergenceError to exit code 3.
"""


class LrPossibError(Exception):
    """Base class for all errors raised by this package."""


class InputError(LrPossibError, ValueError):
    """A caller-supplied value violates a documented precondition."""


class SpecError(InputError):
    """A JSON analysis document is malformed; message carries the field path."""


class XStarError(InputError):
    """The observed sample lies outside the finite-supremum sample set."""


class UnsupportedError(LrPossibError):
    """The request is well formed but outside what this build computes."""


class ConvergenceError(LrPossibError):
    """An iterative routine exhausted its budget without meeting tolerance."""

    def __init__(self, message: str, estimate: float | None = None):
        super().__init__(message)
        self.estimate = estimate
