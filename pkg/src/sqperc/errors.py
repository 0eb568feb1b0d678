"""Exception types raised across the package."""


class PercolationError(ValueError):
    """Base class for all domain errors."""


class InvalidConcentration(PercolationError):
    pass


class NotAdjacent(PercolationError):
    pass


class OutOfWindow(PercolationError):
    pass


class FrameContact(PercolationError):
    """The cluster reaches the window frame, so its boundary is truncated."""


class CycleTouchesFrame(PercolationError):
    pass


class CycleValidation(PercolationError):
    """An ordered vertex set violates a cycle invariant.

    Raised from boundary extraction this always indicates a bug.
    """


class CapExceeded(PercolationError):
    pass


class InteriorTooLarge(PercolationError):
    pass
