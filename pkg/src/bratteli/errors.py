"""Exception types shared across the package."""


class BratteliError(Exception):
    """Base class for all errors raised by this package."""


class CapExceededError(BratteliError, ValueError):
    """A level-enumerating computation was asked for a level above its cap."""


class DomainError(BratteliError, ValueError):
    """Parameters fall outside the domain where an object is defined."""


class PoleError(BratteliError, ZeroDivisionError):
    """A rational function was evaluated at a zero of its denominator."""

    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class NotContainedError(BratteliError, ValueError):
    """An interval query where the lower partition is not inside the upper one."""


class InvalidAlphabetError(BratteliError, ValueError):
    pass


class IdentityViolation(BratteliError, AssertionError):
    """Raised by ``Report.raise_for_status`` when a verifier found a counterexample."""

    def __init__(self, report):
        super().__init__(f"{report.identity} violated: {report.counterexample}")
        self.report = report
