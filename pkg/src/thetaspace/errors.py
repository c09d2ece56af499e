class ThetaError(Exception):
    """Base class for errors raised by this package."""


class StructureError(ThetaError, ValueError):
    """Ranks, levels or endpoints of composable data do not match."""


class ThetaParseError(ThetaError, ValueError):
    def __init__(self, message, text, position):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}: {text!r}")


class WindowExhaustion(ThetaError):
    """An exact answer needs an object that lies outside the window."""

    def __init__(self, message, obj=None):
        self.obj = obj
        if obj is not None:
            message = f"{message}: {obj}"
        super().__init__(message)


class NotPresented(ThetaError):
    """Hom-sets out of a presheaf that is not known to be window-presented."""


class InvariantViolation(ThetaError, AssertionError):
    """Two independent computations of the same quantity disagree."""
