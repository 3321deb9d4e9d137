"""Typed errors raised by the barrier, oracle, simulator and config layers."""


class ReachAvoidError(ValueError):
    """Base class for every domain error in this package."""


class ZeroNormal(ReachAvoidError):
    pass


class CoincidentPlayers(ReachAvoidError):
    pass


class CoincidentPursuers(CoincidentPlayers):
    pass


class DuplicatePlayers(CoincidentPlayers):
    pass


class EmptyPursuerSet(ReachAvoidError):
    pass


class NonPositiveExtent(ReachAvoidError):
    pass


class NotBothActive(ReachAvoidError):
    pass


class EvaderNotInPlay(ReachAvoidError):
    pass


class CollinearProjections(ReachAvoidError):
    pass


class NotCollinearCase(ReachAvoidError):
    pass


class DegenerateConfiguration(ReachAvoidError):
    """No classification branch applies within tolerance.

    ``diagnostics`` carries whatever the detector found (indices, tie
    residuals) so callers can report it instead of guessing a branch.
    """

    def __init__(self, message, **diagnostics):
        super().__init__(message)
        self.diagnostics = diagnostics


class NonUnitHeading(ReachAvoidError):
    pass


class NonPositiveDt(ReachAvoidError):
    pass


class TargetNotOnPlane(ReachAvoidError):
    pass


class ResolutionTooLow(ReachAvoidError):
    pass


class ParseError(ReachAvoidError):
    """Config file could not be parsed; ``path`` names the offending field."""

    def __init__(self, message, path=""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path
