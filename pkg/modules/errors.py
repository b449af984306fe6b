class CantorBoundsError(Exception):
    """Base class for every error raised by the engine."""


class InvalidInputError(CantorBoundsError, ValueError):
    pass


class UnknownConstructionError(CantorBoundsError, KeyError):
    def __str__(self):
        # KeyError quotes its argument; keep the plain message.
        return str(self.args[0]) if self.args else ""


class LevelCapError(CantorBoundsError, ValueError):
    pass


class ConfigFormatError(CantorBoundsError, ValueError):
    pass


class DegenerateRegionError(CantorBoundsError):
    """The region is empty or unbounded."""


class VerificationFailure(CantorBoundsError):
    """A numerical check (fixture, diameter) did not pass."""
