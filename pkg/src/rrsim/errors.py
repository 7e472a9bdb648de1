"""Exception types raised across the package."""


class RrsError(Exception):
    """Base class for all errors raised by rrsim."""


class GeometryError(RrsError, ValueError):
    pass


class QuadratureError(RrsError):
    """Adaptive quadrature hit its panel budget before meeting tolerance.

    The best available estimate is attached as ``result``.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class MaxPanels(QuadratureError):
    pass


class NoBracket(RrsError, ValueError):
    pass


class SingularRegion(RrsError, ValueError):
    pass


class NotFarField(RrsError, ValueError):
    pass


class AlphaDomain(RrsError, ValueError):
    pass


class RateUnreachable(RrsError, ValueError):
    """Target rate cannot be met; ``technology`` names the side that failed."""

    def __init__(self, message, technology=None):
        super().__init__(message)
        self.technology = technology


class DegenerateModel(RrsError, ValueError):
    pass


class ConfigError(RrsError, ValueError):
    """Configuration problem; ``line`` is the 1-based source line when known."""

    def __init__(self, message, line=None, key=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
        self.key = key
