"""Exception hierarchy shared by the solver modules."""


class MaxCutError(Exception):
    """Base class for all errors raised by maxcut1p."""


class ValidationError(MaxCutError, ValueError):
    """An instance violates a structural invariant."""


class EdgeNotFound(ValidationError, KeyError):
    pass


class DuplicateCrossingEdge(ValidationError):
    pass


class SharedEndpointCrossing(ValidationError):
    pass


class DensityExceeded(ValidationError):
    pass


class SelfLoop(ValidationError):
    pass


class ParallelEdge(ValidationError):
    pass


class WeightOverflow(ValidationError):
    pass


class UnknownNode(MaxCutError, KeyError):
    pass


class SameNode(MaxCutError, ValueError):
    pass


class NegativeWeight(MaxCutError, ValueError):
    """Non-negative mode was asked to solve an instance with a negative weight."""


class InvalidForcedPair(MaxCutError, ValueError):
    """A fixed cut pair is not an edge of the graph."""


class NotPlanar(MaxCutError):
    """A leaf graph has no planar embedding."""


class InvalidCrossingSet(NotPlanar):
    """Removing every declared crossing did not leave a planar graph."""


class OddTerminalComponent(MaxCutError, ValueError):
    pass


class TooLarge(MaxCutError, ValueError):
    pass


class Unsatisfiable(MaxCutError):
    """The generator could not realise the requested configuration."""


class ParseError(MaxCutError, ValueError):
    def __init__(self, line: int, reason: str) -> None:
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason
