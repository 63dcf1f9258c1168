"""Exception hierarchy shared by every chaoguide module."""


class ChaoguideError(Exception):
    """Base class for all library errors."""


class PreconditionViolation(ChaoguideError, ValueError):
    """An argument violates an operation's documented precondition."""


class DivergedState(ChaoguideError):
    """A map iterate escaped the divergence bound.

    ``index`` is the orbit index of the first escaped state.
    """

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"orbit diverged at iterate {index}")


class DegenerateTangent(ChaoguideError):
    """The tangent vector norm underflowed during Lyapunov estimation."""


class EmptyOrbit(ChaoguideError):
    pass


class DegenerateBox(ChaoguideError):
    pass


class OrbitTooShort(ChaoguideError):
    pass


class NeverImpacts(ChaoguideError):
    pass


class NonpositiveTof(ChaoguideError, ValueError):
    pass


class BelowGround(ChaoguideError):
    pass


class ReadingOutOfRange(ChaoguideError, ValueError):
    pass


class ObserveAfterImpact(ChaoguideError):
    pass


class ConfigError(ChaoguideError):
    """Configuration file is missing, malformed, or fails the schema."""
