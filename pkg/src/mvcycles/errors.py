"""Exception hierarchy shared by every module.

The CLI maps :class:`ConjectureViolation` to its own exit status so that
harness runs can tell falsifications apart from ordinary failures.
"""


class MVError(Exception):
    """Base class for computational errors raised by this package."""


class NonExactDivision(MVError):
    pass


class MissingEntry(MVError):
    pass


class BadLevel(MVError):
    pass


class NotOverlapping(MVError):
    pass


class LimitExceeded(MVError):
    pass


class CyclicGraph(MVError):
    pass


class InvariantViolation(MVError):
    pass


class MissingBasisEntry(MVError):
    def __init__(self, picture):
        super().__init__(f"no basis entry for {picture}")
        self.picture = picture


class NoUniqueMaximum(MVError):
    pass


class NotTStable(MVError):
    pass


class WindowOverflow(MVError):
    pass


class WindowTooSmall(MVError):
    pass


class SamplingExhausted(MVError):
    pass


class SingularProjection(MVError):
    pass


class ParseError(MVError, ValueError):
    pass


class ConjectureViolation(MVError):
    """A computation contradicted one of the conjectures under test."""


class LeadingTermAnomaly(ConjectureViolation):
    pass
