"""Exception types raised across the package."""


class SpincatError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatchError(SpincatError, ValueError):
    """Operands act on Hilbert spaces of incompatible dimension."""


class StateNormalizationError(SpincatError, ValueError):
    """Amplitude vector is not normalized within tolerance."""


class NotADensityMatrixError(SpincatError, ValueError):
    """Matrix violates Hermiticity, unit trace or positivity tolerances."""


class OddAtomNumberError(SpincatError, ValueError):
    """State construction requires an even atom number."""


class TruncationError(SpincatError):
    """Fock-space cutoff clips a non-negligible amplitude tail."""


class CutoffSearchError(SpincatError):
    """No admissible Fock cutoff below the configured ceiling."""


class BranchTrackingError(SpincatError):
    """Square-root branch continuity lost between adjacent time samples."""


class NumericalInstabilityError(SpincatError):
    """Extrapolated estimates disagree beyond the trusted level."""


class ParameterRangeError(SpincatError, ValueError):
    """Scalar argument outside its mathematically valid range."""


class UnsupportedAngleError(SpincatError, ValueError):
    """Closed form only available at a specific rotation angle."""


class BracketError(SpincatError):
    """Root bracketing failed: target level never crossed in the search range."""


class ConfigError(SpincatError, ValueError):
    """Scenario configuration fails schema or consistency validation."""


class EngineError(SpincatError):
    """A compute engine could not evaluate the requested quantity."""


class ResourceCeilingError(SpincatError):
    """Requested problem size exceeds the configured resource limits."""


class IncompatibleConfigsError(SpincatError, ValueError):
    """Scenario configs differ in more than the engine selection."""
