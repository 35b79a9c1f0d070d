"""Exception hierarchy.

Physics-guard failures (aliasing, causality, edge artifacts, phase wraps)
share the :class:`PhysicsValidationError` base so the scenario runner can map
them onto a single exit code.
"""


class PrecursimError(Exception):
    """Base class for all package errors."""


class PhysicalLimitError(PrecursimError, ValueError):
    """A requested spectral structure is narrower than the medium allows."""


class ConfigError(PrecursimError, ValueError):
    """A scenario configuration failed schema or consistency validation."""


class PhysicsValidationError(PrecursimError):
    """A numerical guard tripped; the result would not be trustworthy."""


class EdgeArtifactError(PhysicsValidationError):
    """Absorption profile has not settled at the grid edges."""


class PhaseWrapError(PhysicsValidationError):
    pass


class AliasingError(PhysicsValidationError):
    """Output energy reached the boundary of the circular time window."""


class CausalityError(PhysicsValidationError):
    pass


class WindowTooSmallError(PhysicsValidationError):
    pass


class GridMismatchError(PrecursimError, ValueError):
    """Pulse and transfer-function grids are not FFT conjugates."""


class NoFrontError(PrecursimError):
    pass


class AmbiguousPeakError(PrecursimError):
    """Trace has more than one peak above the half-maximum level."""


class InfiniteGroupVelocity(PrecursimError, ZeroDivisionError):
    pass


class FitError(PrecursimError):
    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals
