"""Exception hierarchy shared across the package.

Configuration / domain problems map to CLI exit code 1, numerical
tolerance failures to exit code 2.
"""


class QuadroptError(Exception):
    """Base class for all package errors."""


class ParameterDomainError(QuadroptError):
    """A physical parameter lies outside its admissible domain."""


class ConfigError(QuadroptError):
    """Malformed or inconsistent run configuration."""


class TruncationError(QuadroptError):
    """A truncated basis is too small for the requested state or tolerance."""

    def __init__(self, message, required_n_fock=None):
        super().__init__(message)
        self.required_n_fock = required_n_fock


class ToleranceError(QuadroptError):
    """A numerical result failed its configured tolerance."""


class StepSizeError(QuadroptError):
    """Time integration norm drift exceeded the allowed bound."""
