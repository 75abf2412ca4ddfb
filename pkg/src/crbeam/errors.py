"""Exception types shared across the package."""


class CrbeamError(Exception):
    """Base class for all package errors."""


class DegenerateGeometryError(CrbeamError):
    """Two scene points coincide, so bearings/path losses are undefined."""


class UnidentifiableParameterError(CrbeamError):
    """The Fisher information is singular for the requested parameters."""

    def __init__(self, message, null_space_dim=None):
        super().__init__(message)
        self.null_space_dim = null_space_dim


class ConfigurationError(CrbeamError):
    """Bad user input: malformed config, unknown scheme, infeasible problem."""


class DegenerateMismatchError(CrbeamError):
    """Weighted beamformer mismatch target is identically zero."""


class SolverFailure(CrbeamError):
    """All conic backends failed or returned an unusable status."""
