"""Exception types shared across the package."""


class RadialGasError(Exception):
    """Base class for all package errors."""


class DomainError(RadialGasError, ValueError):
    """An argument is outside the physical domain of an operation."""


class PositivityError(RadialGasError):
    """Weighted density fell to or below the positivity floor."""

    def __init__(self, cells, message=None):
        self.cells = list(cells)
        super().__init__(message or f"positivity floor violated at cells {self.cells[:8]}"
                         + ("..." if len(self.cells) > 8 else ""))


class SonicSingularityError(RadialGasError):
    """Initial-data integration landed on the sonic line u^2 = h^2."""

    def __init__(self, radius):
        self.radius = radius
        super().__init__(f"sonic singularity in profile integration at r = {radius:.6g}")


class NegativeSoundSpeedError(RadialGasError):
    """Initial-data integration drove the sound speed below zero."""

    def __init__(self, radius):
        self.radius = radius
        super().__init__(f"sound speed driven below zero at r = {radius:.6g}")


class SonicDiagnosticError(RadialGasError):
    """Gradient diagnostics requested on cells too close to the sonic line."""

    def __init__(self, cells):
        self.cells = list(cells)
        super().__init__(f"characteristic speed below tolerance at cells {self.cells[:8]}"
                         + ("..." if len(self.cells) > 8 else ""))


class UnsupportedGammaError(RadialGasError):
    """The transport oracle only supports the adiabatic exponent 3."""


class SonicOnPathError(RadialGasError):
    """A characteristic speed crossed zero along an integrated path."""

    def __init__(self, t, r):
        self.t = t
        self.r = r
        super().__init__(f"characteristic speed crossed zero on path at t = {t:.6g}, r = {r:.6g}")


class NotStrongCompressionError(RadialGasError, ValueError):
    """The strong-compression hypothesis alpha0 < -M does not hold."""


class ConfigError(RadialGasError, ValueError):
    """Invalid configuration text or values."""

    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)
